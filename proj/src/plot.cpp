#include "ddsim/plot.hpp"

#include <algorithm>
#include <cstdio>

namespace ddsim::plot {

namespace {

std::string stem(const std::string& csv) {
    const auto dot = csv.rfind('.');
    return dot == std::string::npos ? csv : csv.substr(0, dot);
}

std::string header(const std::string& out, const std::string& title, int width = 800, int height = 700) {
    return "set terminal pngcairo size " + std::to_string(width) + "," + std::to_string(height) + "\n" +
           "set output '" + out + "'\n" + "set datafile separator ','\n" + "set key autotitle columnhead\n" +
           "set title '" + title + "'\n";
}

} // namespace

std::string contour_script(const std::string& csv, const std::string& title) {
    return header(stem(csv) + ".png", title) +
           "set xlabel 'k_x'\nset ylabel 'k_y'\nset xrange [-pi:pi]\nset yrange [-pi:pi]\nset size square\n"
           "set cblabel 'Im E'\nset palette rgb 33,13,10\n"
           "plot '" + csv + "' using 1:2:3 with points pt 7 ps 0.5 palette notitle\n";
}

std::string heatmap_script(const std::string& csv, const std::string& title, int value_col, const std::string& xlabel,
                           const std::string& ylabel) {
    return header(stem(csv) + ".png", title) + "set xlabel '" + xlabel + "'\nset ylabel '" + ylabel +
           "'\nset size ratio -1\nset palette rgb 33,13,10\n"
           "plot '" + csv + "' using 1:2:" + std::to_string(value_col) + " with image notitle\n";
}

std::string snapshots_script(const std::vector<std::string>& csvs, const std::vector<double>& times,
                             const std::string& title) {
    const int n = static_cast<int>(csvs.size());
    std::string s = header("snapshots.png", title, 320 * std::max(n, 1), 360);
    s += "unset key\nset size ratio -1\nset palette rgb 33,13,10\nunset colorbox\n";
    s += "set multiplot layout 1," + std::to_string(std::max(n, 1)) + " title '" + title + "'\n";
    for (int i = 0; i < n; ++i) {
        char t[64];
        std::snprintf(t, sizeof t, "t = %g", i < static_cast<int>(times.size()) ? times[i] : 0.0);
        s += "set title '" + std::string(t) + "'\nplot '" + csvs[i] + "' using 1:2:3 with image\n";
    }
    return s + "unset multiplot\n";
}

std::string complex_plane_script(const std::string& csv, int re_col, int im_col, const std::string& title) {
    return header(stem(csv) + ".png", title) + "set xlabel 'Re E'\nset ylabel 'Im E'\n"
           "plot '" + csv + "' using " + std::to_string(re_col) + ":" + std::to_string(im_col) +
           " with points pt 7 ps 0.4 notitle\n";
}

std::string profile_script(const std::string& csv, const std::string& title) {
    return header(stem(csv) + ".png", title) +
           "set xlabel 'r_perp'\nset ylabel '|phi_s|'\nset logscale y\n"
           "plot '" + csv + "' using 1:4 with linespoints pt 7 ps 0.5 notitle\n";
}

std::string poles_script(const std::string& csv, const std::string& title) {
    return header(stem(csv) + ".png", title) +
           "set xlabel 'Re z'\nset ylabel 'Im z'\nset size ratio -1\nset parametric\nset trange [0:2*pi]\n"
           "plot cos(t), sin(t) with lines lc 'gray' notitle, \\\n"
           "     '" + csv + "' using 1:2 with points pt 7 ps 1.2 notitle\n";
}

} // namespace ddsim::plot
