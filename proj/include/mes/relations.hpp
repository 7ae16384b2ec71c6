#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "mes/exact.hpp"
#include "mes/numerics.hpp"
#include "mes/words.hpp"

namespace mes {

using IntVector = std::vector<BigInt>;
using IntMatrix = std::vector<IntVector>;  // one basis vector per row

class DependentRows : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class PrecisionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Integral LLL with delta = 3/4 in exact integer arithmetic.
IntMatrix lll_reduce(IntMatrix basis);

struct LabeledValue {
    std::string label;
    Real value;
};

struct RelationProblem {
    std::vector<LabeledValue> values;
    unsigned digits = kDefaultDigits;  // accuracy of the values
    BigInt bound = 1000000;            // max |coefficient|
    std::size_t anchored = 0;          // if > 0, a relation must involve one of the first `anchored` values
};

struct RelationResult {
    bool found = false;
    IntVector coeffs;      // the relation when found, else the best candidate
    Real residual = 0;     // |sum v_i x_i| for coeffs
    Real threshold = 0;    // acceptance threshold for coeffs
    double confidence = 0; // log10(threshold / residual), found only
};

// Guard digits kept below the lattice scale 10^(digits - g).
inline constexpr unsigned kLatticeGuard = 10;

RelationResult find_relation(const RelationProblem& problem);

std::string format_relation(const RelationProblem& problem, const IntVector& v);

// Hoffman compositions in {2,3} of weight k, 2 <= k <= 12.
std::vector<SignedComposition> mzv_basis(int k);
int mzv_dimension(int k);

}  // namespace mes
