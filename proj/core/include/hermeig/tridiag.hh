#pragma once

#include <hermeig/backend.hh>
#include <hermeig/matrix.hh>

#include <vector>

namespace hermeig {

/// Output of either reduction path. `stages` lists the reflector sets in the
/// order they were applied during the reduction; the last one carries the
/// phase diagonal that makes the off-diagonal real and non-negative, so that
/// T = U^H A U with U = Q_stage0 * Q_stage1 * ... * diag(phase).
struct TridiagResult {
    RealSymTridiagonal t;
    std::vector<ReflectorSet> stages;
    index_t band_width = 0;  // two-stage only
};

/// Blocked one-stage Householder tridiagonalization. Each panel of
/// `panel_width` columns is factored with matrix-vector products against the
/// not-yet-updated trailing matrix; the trailing matrix then receives one
/// rank-2k update.
TridiagResult tridiagonalize_one_stage(const DenseHermitian& a, index_t panel_width, Backend& backend);

struct BandReduction {
    BandHermitian band;
    ReflectorSet reflectors;
};

/// First stage of the two-stage path: blocked reduction to half-bandwidth
/// `b`. Panels are QR-factored on the host with level-2 kernels; the
/// two-sided trailing update is issued as level-3 calls with the overlap hint.
BandReduction reduce_to_band(const DenseHermitian& a, index_t b, Backend& backend);

struct ChaseResult {
    RealSymTridiagonal t;
    ReflectorSet reflectors;
};

/// Second stage: band to real tridiagonal by column-wise bulge chasing on the
/// host. Reflectors are stored regrouped into blocks of `sweep_group`
/// consecutive sweeps (0 picks the default) so that they can be applied as
/// blocked updates; the regrouping preserves the represented unitary.
ChaseResult bulge_chase(const BandHermitian& band, index_t sweep_group = 0);

TridiagResult tridiagonalize_two_stage(const DenseHermitian& a, index_t b, Backend& backend,
                                       index_t sweep_group = 0);

/// Turns a Hermitian tridiagonal matrix with real diagonal `diag` and complex
/// sub-diagonal `sub` into a real one with non-negative off-diagonal, and
/// returns the unit phases phi with T_real = diag(phi)^H T diag(phi).
RealSymTridiagonal make_real_tridiagonal(const std::vector<double>& diag, const std::vector<cplx>& sub,
                                         std::vector<cplx>& phase);

/// Default number of consecutive sweeps grouped per blocked application.
index_t default_sweep_group(index_t b);

}  // namespace hermeig
