#pragma once

#include <string>
#include <vector>

namespace ddsim::plot {

// gnuplot scripts that read the CSVs written next to them. Each renders to
// <stem>.png with the pngcairo terminal.

/// Contour points coloured by Im E (contour CSV).
std::string contour_script(const std::string& csv, const std::string& title);

/// Heatmap of column `value_col` over columns 1 and 2 (kx,ky,A / x,y,P).
std::string heatmap_script(const std::string& csv, const std::string& title, int value_col,
                           const std::string& xlabel, const std::string& ylabel);

/// One heatmap panel per snapshot CSV (x,y,density), side by side.
std::string snapshots_script(const std::vector<std::string>& csvs, const std::vector<double>& times,
                             const std::string& title);

/// Complex-plane scatter (spectrum CSV index,reE,imE or bands CSV).
std::string complex_plane_script(const std::string& csv, int re_col, int im_col, const std::string& title);

/// |phi| vs r_perp on a log scale (profile CSV).
std::string profile_script(const std::string& csv, const std::string& title);

/// Pole positions with the unit circle (poles CSV).
std::string poles_script(const std::string& csv, const std::string& title);

} // namespace ddsim::plot
