// Morse indices, n-invariant Morse indices, resonance classification and
// nonradial multiplicity counts, from computed or asymptotic eigenvalues.

#pragma once

#include <map>
#include <optional>
#include <vector>

#include "henonlab/constants.hpp"

namespace henonlab {

/// An exact index, or a closed interval at resonant alpha.
struct IndexRange {
    int lo = 0, hi = 0;
    bool is_interval() const { return lo != hi; }
    bool contains(int v) const { return lo <= v && v <= hi; }
};

/// m(u) = 2 sum_j ceil((2+alpha)/2 sqrt(-nu_j)) - m. Requires exactly m
/// negative entries.
int morse_index(int m, double alpha, const std::vector<double>& nu);

/// m_n(u) = m + 2 sum_j floor((ceil((2+alpha)/2 sqrt(-nu_j)) - 1)/n).
int morse_index_sym(int n, int m, double alpha, const std::vector<double>& nu);

/// Large-p index: 1 + 2 ceil(alpha/2) for m = 1;
/// 2 ceil((2+alpha) kappa/2) + 2 ceil(alpha/2) for m = 2 off resonance,
/// the 2-wide interval at alpha = alpha_n.
IndexRange asymptotic_morse(int m, double alpha);

/// (positive, nodal) counts of distinct nonradial solutions:
/// ceil(alpha/2) and ceil((2+alpha) kappa/2 - 1).
std::pair<int, int> multiplicity(double alpha);

IndexRange asymptotic_sym_morse(int n, int m, double alpha);

struct MorseReport {
    double alpha = 0.0;
    double p = 0.0;  ///< 0 marks an asymptotic (p -> infinity) report
    int zones = 1;
    bool asymptotic = false;
    std::vector<double> nu_used;
    IndexRange morse;
    std::map<int, IndexRange> sym_morse;  ///< n -> index, n = 1..n_max
    bool resonant = false;
    double nearest_resonance = 0.0;       ///< alpha_n closest to alpha
    bool ceiling_unstable = false;        ///< a nu sits within 1e-6 of a ceiling edge
    int multiplicity_positive = 0;
    int multiplicity_nodal = 0;
};

/// Aggregated report; pass nu for a computed-p report or nullopt for the
/// asymptotic one.
MorseReport full_report(const ProblemParams& params, int m,
                        const std::optional<std::vector<double>>& nu, int n_max);

}  // namespace henonlab
