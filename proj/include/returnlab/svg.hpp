#pragma once

#include <string>
#include <vector>

#include "returnlab/complexity.hpp"
#include "returnlab/distribution.hpp"
#include "returnlab/horizons.hpp"

namespace returnlab {

// Deterministic static SVG renderings of the core reports. Every function
// throws UnsupportedKind when the payload has nothing to draw.

// Bar chart of the PMF with five marker lines: mode, both 1-sigma band edges,
// both 2-sigma band edges.
std::string emit_svg_pmf(const Pmf& pmf, const PmfStats& stats, const std::string& title);

// Min/max/mode polylines across the horizon ladder.
std::string emit_svg_horizons(const std::vector<HorizonSummary>& summaries,
                              const std::string& title);

// NMI-vs-lag curve.
std::string emit_svg_nmi(const std::vector<double>& curve, const std::string& title);

// Three stacked panels: Shannon entropy, H(2), largest Lyapunov per horizon.
std::string emit_svg_profile(const ComplexityProfile& profile, const std::string& title);

}  // namespace returnlab
