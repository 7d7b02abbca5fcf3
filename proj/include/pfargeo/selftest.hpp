#pragma once

#include <iosfwd>

namespace pfargeo {

/// Run the built-in synthetic acceptance suite (affine model, cross-framework
/// equivalence, solver contracts, zero-Doppler solve, scanline property,
/// resampler chain, Doppler conversion, determinism, total runtime), printing
/// one pass/fail line per criterion. Returns 0 when every criterion passes.
///
/// Debug hook: PFA_RD_GEO_SELFTEST_PERTURB_A21, when set to a nonzero value,
/// scales the a21 entry of every affine model under test by (1 + value) so
/// the suite's sensitivity can be exercised.
int run_selftest(std::ostream& out);

}  // namespace pfargeo
