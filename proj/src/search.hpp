#pragma once

#include "ineq.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace alzer {

enum class Family { polynomial, trig_polynomial, exp_mixture };

struct TargetHypotheses {
    bool convex = false;
    bool increasing = false;
    bool decreasing = false;
    bool mean_zero = false;
    bool endpoint_max = false;
    bool positive_endpoint_product = false;
};

// Identical spec + seed yields a bit-identical corpus: per-trial seeds come
// from a splitmix64 split of the master seed, so serial and parallel runs
// agree trial by trial.
struct GeneratorSpec {
    Family family = Family::polynomial;
    Interval interval{0.0, 1.0};
    int degree_cap = 6; // polynomial degree / trig harmonics / mixture terms
    double coeff_lo = -1.0;
    double coeff_hi = 1.0;
    TargetHypotheses target;
    std::uint64_t seed = 0;
    int trials = 0;
};

std::uint64_t trial_seed(std::uint64_t master, std::uint64_t trial);

// The accepted function of one trial; deterministic in (spec, trial).
// Convexity is manufactured by twice-integrating a nonnegative polynomial,
// monotonicity by integrating once; the rest is rejection sampling with a
// 10,000-rejects-per-accept cap (CapError beyond that).
Expr generate_trial(const GeneratorSpec& spec, int trial);

std::vector<Expr> generate(const GeneratorSpec& spec);

struct CounterexampleRecord {
    std::string theorem_id;
    std::string function_text;
    Interval interval{0.0, 1.0};
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0; // negative
    HypothesisFlags hypotheses;
    long long trial = 0;
    std::uint64_t seed = 0;
};

struct TheoremStat {
    std::string theorem_id;
    long long checked = 0;
    long long violations = 0;
    long long errors = 0;
    double worst_ratio = std::numeric_limits<double>::quiet_NaN(); // max lhs/rhs seen
};

struct MineResult {
    std::vector<CounterexampleRecord> records;
    std::vector<TheoremStat> stats;
};

// Runs every requested checker over the generated corpus. A violation is
// recorded only after it survives a confirmation pass at 10x tighter
// quadrature tolerance; the record stores the confirmed values, so a replay
// of (spec, trial) at tol/10 reproduces it exactly. Per-trial failures are
// counted and skipped, never fatal.
MineResult mine(const GeneratorSpec& spec, const std::vector<std::string>& theorems, int n = 1,
                double tol = kDefaultTol);

} // namespace alzer
