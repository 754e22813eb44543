#include "drf/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace drf {

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::pass: return "pass";
        case Verdict::fail: return "fail";
        case Verdict::inconclusive: return "inconclusive";
    }
    return "?";
}

void CheckReport::push_row(double g, double l, double r) {
    grid.push_back(g);
    lhs.push_back(l);
    rhs.push_back(r);
    ratio.push_back(r != 0 ? l / r : std::numeric_limits<double>::infinity());
}

void CheckReport::finalize_ratios() {
    ratio_sup = -std::numeric_limits<double>::infinity();
    ratio_inf = std::numeric_limits<double>::infinity();
    for (double q : ratio) {
        ratio_sup = std::max(ratio_sup, q);
        ratio_inf = std::min(ratio_inf, q);
    }
    if (ratio.empty()) ratio_sup = ratio_inf = 0;
}

bool CheckReport::hypotheses_ok() const {
    for (const auto& h : hypotheses)
        if (!h.ok) return false;
    return true;
}

std::string format_full(double x) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.16e", x);
    return buf;
}

void emit_plot_data(const CheckReport& report, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("emit_plot_data: cannot open " + path);
    out << "grid,lhs,rhs,ratio\n";
    for (std::size_t i = 0; i < report.grid.size(); ++i)
        out << format_full(report.grid[i]) << ',' << format_full(report.lhs[i]) << ','
            << format_full(report.rhs[i]) << ',' << format_full(report.ratio[i]) << '\n';
    if (!out) throw std::runtime_error("emit_plot_data: write failed for " + path);
}

std::string summarize(const CheckReport& report) {
    std::ostringstream os;
    os << report.check_name << " verdict=" << to_string(report.verdict)
       << " ratio_sup=" << format_full(report.ratio_sup)
       << " ratio_inf=" << format_full(report.ratio_inf) << '\n';
    for (const auto& h : report.hypotheses)
        os << "  hypothesis " << h.name << " " << (h.ok ? "ok" : "FAIL")
           << " constant=" << format_full(h.constant) << '\n';
    for (const auto& [name, v] : report.stats)
        os << "  stat " << name << " = " << format_full(v) << '\n';
    return os.str();
}

}  // namespace drf
