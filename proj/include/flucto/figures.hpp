#pragma once

#include <string>
#include <vector>

#include "flucto/io.hpp"
#include "flucto/model.hpp"

namespace flucto {

/// One reproduced panel: the parameter point it was computed at plus the
/// emitted curves.
struct FigurePanel {
    std::string name;  // e.g. "fig3b"
    AtomParams params;
    ColumnTable table;
};

struct FigureData {
    int number = 0;
    std::vector<FigurePanel> panels;
};

/// Reproduction data for the published curve sets 2..7: incoherent spectra,
/// out-of-phase squeezing spectra, noise-correlation spectra, variances,
/// CHD correlations, and CHD spectra.  Panels include the two-level
/// reference curves where the original figure shows them.
FigureData figure_data(int number);

/// Writes one CSV per panel plus a JSON manifest; returns written paths.
std::vector<std::string> write_figure(const FigureData& fig,
                                      const std::string& outdir);

}  // namespace flucto
