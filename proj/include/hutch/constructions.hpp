#pragma once

#include "hutch/ifs.hpp"

#include <utility>
#include <vector>

namespace hutch {

/// {R_alpha, f2, f3, f4}, the PL maps given by their graph segments on the
/// unit square. Throws std::invalid_argument unless 0 < alpha < 1.
IFS theorem2_ifs(const Rational& alpha);

struct DiagonalReport {
    bool contained = false;
    /// (generator index, its fixed-point set) for every generator with fixed points.
    std::vector<std::pair<std::size_t, ArcSet>> witness;
};

/// True iff the fixed-point sets of the generators cover S^1, i.e. the union
/// of the graphs contains the diagonal. Then A is a subset of F(A) for every A.
DiagonalReport diagonal_containment_check(const IFS& system);

struct DenjoyParams {
    Rational alpha{34, 55};
    Rational lambda{1, 2};
    Rational mass{1, 2};     // total length s of the inserted gaps
    unsigned stage = 8;      // gaps at orbit indices -stage..stage
    Rational x0 = 0;         // base point of the blown-up orbit
    unsigned generators = 2; // number of maps sharing the same gap set
};

struct IndexedArc {
    int index;
    Arc arc;
};

/// Finite-stage Denjoy blowup of the rotation by alpha.
///
/// The orbit points theta_n = x0 + n alpha, |n| <= N, are replaced by gaps of
/// length proportional to lambda^|n| and total mass s; the rest of the circle
/// is rescaled by 1 - s. Two extra "seam" intervals at n = -(N+1) and N+1
/// (inside K_N, of length s lambda^(N+1) / Z) close the chain: every map
/// carries seam -(N+1) onto gap -N, gap n onto gap n+1 and gap N onto seam
/// N+1, and is affine on the pieces of K_N in between. maps[0] is affine on
/// each gap; maps[i] for i >= 1 has one interior breakpoint per gap sending
/// relative position 1/(i+2) to 1 - 1/(i+2), so the family acts non-trivially
/// inside the gaps while sharing K_N.
struct DenjoyApproximant {
    DenjoyParams params;
    std::vector<PLHomeo> maps;
    std::vector<IndexedArc> gaps;   // closed arcs of the open gaps, index -N..N
    std::vector<IndexedArc> seams;  // index -(N+1) and N+1
    ArcSet k;                       // complement of the open gaps, measure 1 - s
    Rational residual;              // max over maps of d_H(f(K_N), K_N)

    const PLHomeo& g() const { return maps.front(); }
    const Arc& gap(int index) const;
};

/// Throws std::invalid_argument unless 0 < alpha < 1 with denominator
/// > 2N + 2, 0 < lambda < 1, 0 < s < 1, generators >= 1, and the seams fit
/// inside K_N.
DenjoyApproximant denjoy_approximant(const DenjoyParams& params);

struct BlowupMap {
    PLHomeo h;
    CirclePoint p;   // attracting fixed point, midpoint of the target gap
    Arc target_gap;
    int gap_index = 0;
    Rational sigma;
    /// h is the identity outside this arc (target gap plus adjacent K components).
    Arc support;
};

/// PL map fixing the midpoint p of gap j with slope sigma on both sides and
/// pushing both gap endpoints a quarter of the gap length towards p; the
/// adjacent components of K_N are stretched accordingly and h is the identity
/// elsewhere, so h(K_N) strictly contains K_N. All invariants are verified
/// and a violation throws std::logic_error.
BlowupMap blowup_map(const DenjoyApproximant& d, int gap_index, const Rational& sigma);

struct Theorem1System {
    IFS forward;   // {g_1, g_1^-1, ..., g_m, g_m^-1, h}
    IFS backward;  // inverse_system(forward)
};

Theorem1System theorem1_system(const DenjoyApproximant& d, const BlowupMap& b);

struct Theorem1Params {
    DenjoyParams denjoy;
    int gap_index = 0;
    Rational sigma{1, 2};
};

Theorem1System theorem1_system(const Theorem1Params& params);

}  // namespace hutch
