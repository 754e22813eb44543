#pragma once

#include <map>
#include <string>
#include <vector>

#include "drf/dr_params.hpp"

namespace drf {

enum class Verdict { pass, fail, inconclusive };

std::string to_string(Verdict v);

struct Hypothesis {
    std::string name;
    bool ok = false;
    double constant = 0;
};

// Outcome of one theorem audit: per-grid-point lhs/rhs/ratio rows plus the
// hypothesis gates and empirical constants the verdict traces through.
struct CheckReport {
    std::string check_name;
    DRParams params;
    std::vector<double> grid;
    std::vector<double> lhs;
    std::vector<double> rhs;
    std::vector<double> ratio;
    double ratio_sup = 0;
    double ratio_inf = 0;
    std::vector<Hypothesis> hypotheses;
    Verdict verdict = Verdict::inconclusive;
    std::map<std::string, double> tolerances;
    std::map<std::string, double> stats;  // named empirical constants

    void push_row(double g, double l, double r);
    void finalize_ratios();
    bool hypotheses_ok() const;
};

// Full-precision scientific notation; deterministic byte output.
std::string format_full(double x);

// CSV with fixed header "grid,lhs,rhs,ratio" and a trailing newline.
void emit_plot_data(const CheckReport& report, const std::string& path);

// Columnar summary: verdict, ratio bounds, hypotheses, stats.
std::string summarize(const CheckReport& report);

}  // namespace drf
