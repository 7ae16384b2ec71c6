#pragma once

#include <boost/multiprecision/mpfr.hpp>

#include <mutex>
#include <string>

namespace mes {

using Real = boost::multiprecision::mpfr_float;

// Boost keeps a single process-wide default precision for mpfr_float, so every
// numeric routine runs under this scope. The lock is recursive so nested
// evaluations can raise the precision again.
class PrecisionScope {
public:
    explicit PrecisionScope(unsigned digits10);
    ~PrecisionScope();
    PrecisionScope(const PrecisionScope&) = delete;
    PrecisionScope& operator=(const PrecisionScope&) = delete;

private:
    std::unique_lock<std::recursive_mutex> lock_;
    unsigned saved_;
};

// Decimal digits added on top of every requested precision.
inline constexpr unsigned kGuardDigits = 10;

Real pow10(int e);
std::string to_decimal(const Real& x, unsigned digits);

}  // namespace mes
