#pragma once

#include "heis/crossed.hpp"
#include "heis/dirac.hpp"
#include "heis/io.hpp"
#include "heis/opalg.hpp"

#include <random>
#include <string>

namespace heis {

/// Deterministic generators shared by the verification suites and the tests.
namespace gen {

using Rng = std::mt19937_64;

ExactScalar scalar(Rng& rng, int modulus, bool allow_atoms = true);
FourierFunction fourier(Rng& rng, int n, int modulus, int max_mode = 1, int max_terms = 2);
CliffordWord word(Rng& rng, int n);
/// Classical symbol with ~1 term per degree between floor and top.
HSymbol symbol(Rng& rng, const FoliationShape& shape, int modulus, int top, int floor,
               bool with_words = true);
IsometryElement isometry(Rng& rng, const FoliationShape& shape, int modulus);
/// Random element of D^m_k with the given eps truncation.
OpSeries op_series(Rng& rng, const FoliationShape& shape, int modulus, int two_m, int k, int trunc,
                   int symbol_floor);
ChristoffelData christoffel(Rng& rng, const FoliationShape& shape, int modulus);
DiracDescriptor dirac_descriptor(Rng& rng, const FoliationShape& shape, int modulus, bool de_rham);
/// Degree-0 data A(x) + B(x) p rho^{-1/4} on shape (1,0).
HSymbol order_zero_1d(Rng& rng, int modulus);

}  // namespace gen

/// Compares two symbols on the intersection of their trusted ranges.
bool equal_trusted(const HSymbol& a, const HSymbol& b);

struct SuiteOptions {
    uint64_t seed = 0;
    /// scales the spec case counts down for quick runs; 0 keeps defaults
    int case_limit = 0;
    /// negative-control hook: runs the residue suite against a deliberately
    /// wrong sphere-moment normalization, which must produce failures
    bool inject_bad_convention = false;
};

VerificationReport run_suite(const std::string& name, const SuiteOptions& opt);

/// The frozen cochain normalization between the Radul cocycle and the 1-D
/// fundamental-class pairing, determined from the winding pair.
ExactScalar determine_kappa(int modulus);

}  // namespace heis
