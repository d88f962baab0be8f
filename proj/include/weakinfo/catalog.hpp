#pragma once

#include <vector>

#include "weakinfo/market.hpp"

namespace weakinfo::catalog {

// One risky asset, one period, S_0 = s0 and S_1 = terminal[i] on outcome i.
MarketModel one_period(const std::vector<double>& terminal, double s0 = 1.0);

// S_0 = 1, S_1 = (s1, s2, s3).
MarketModel trinomial(double s1 = 2.0, double s2 = 1.0, double s3 = 0.5);

// S_0 = 1, S_1 = (up, down).
MarketModel binomial(double up = 2.0, double down = 0.5);

// Non-recombining multiplicative tree: each step multiplies by up or down.
MarketModel binomial_tree(int periods, double up, double down);

// Traded asset driven by W only; B is an independent untraded coin.
// Outcome order: (W up, B up), (W up, B down), (W down, B up), (W down, B down).
MarketModel two_factor(double up = 2.0, double down = 0.5);
Measure two_factor_measure(double p_w, double p_b = 0.5);

}  // namespace weakinfo::catalog
