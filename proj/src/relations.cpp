#include "mes/relations.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

namespace mes {

namespace {

BigInt dot(const IntVector& a, const IntVector& b) {
    BigInt s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// Nearest integer to a/b for b > 0, halves rounded up.
BigInt round_div(const BigInt& a, const BigInt& b) {
    BigInt num = 2 * a + b;
    BigInt den = 2 * b;
    BigInt q;
    mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return q;
}

BigInt exact_div(const BigInt& a, const BigInt& b) {
    BigInt q;
    mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

}  // namespace

IntMatrix lll_reduce(IntMatrix b) {
    const std::size_t n = b.size();
    if (n == 0) return b;
    for (const auto& row : b)
        if (row.size() != b[0].size()) throw std::invalid_argument("lll_reduce: ragged matrix");

    // 1-based indices throughout, following the integral formulation:
    // d[i] are the Gram determinants, lambda[k][j] = d[j] * mu[k][j].
    std::vector<BigInt> d(n + 1, 0);
    std::vector<std::vector<BigInt>> lambda(n + 1, std::vector<BigInt>(n + 1, 0));
    auto B = [&b](std::size_t i) -> IntVector& { return b[i - 1]; };

    d[0] = 1;
    d[1] = dot(B(1), B(1));
    if (d[1] == 0) throw DependentRows("lll_reduce: zero row");
    std::size_t k = 2, kmax = 1;

    auto redi = [&](std::size_t kk, std::size_t l) {
        if (abs(2 * lambda[kk][l]) <= d[l]) return;
        const BigInt q = round_div(lambda[kk][l], d[l]);
        IntVector& bk = B(kk);
        const IntVector& bl = B(l);
        for (std::size_t t = 0; t < bk.size(); ++t) bk[t] -= q * bl[t];
        lambda[kk][l] -= q * d[l];
        for (std::size_t i = 1; i < l; ++i) lambda[kk][i] -= q * lambda[l][i];
    };

    auto swapi = [&](std::size_t kk) {
        std::swap(B(kk), B(kk - 1));
        for (std::size_t j = 1; j + 1 < kk; ++j) std::swap(lambda[kk][j], lambda[kk - 1][j]);
        const BigInt lam = lambda[kk][kk - 1];
        const BigInt Bv = exact_div(d[kk - 2] * d[kk] + lam * lam, d[kk - 1]);
        for (std::size_t i = kk + 1; i <= kmax; ++i) {
            const BigInt t = lambda[i][kk];
            lambda[i][kk] = exact_div(d[kk] * lambda[i][kk - 1] - lam * t, d[kk - 1]);
            lambda[i][kk - 1] = exact_div(Bv * t + lam * lambda[i][kk], d[kk]);
        }
        d[kk - 1] = Bv;
    };

    while (k <= n) {
        if (k > kmax) {
            kmax = k;
            for (std::size_t j = 1; j <= k; ++j) {
                BigInt u = dot(B(k), B(j));
                for (std::size_t i = 1; i < j; ++i) u = exact_div(d[i] * u - lambda[k][i] * lambda[j][i], d[i - 1]);
                if (j < k) {
                    lambda[k][j] = u;
                } else {
                    d[k] = u;
                    if (u == 0) throw DependentRows("lll_reduce: rows are linearly dependent");
                }
            }
        }
        // Lovasz test with delta = 3/4.
        while (true) {
            redi(k, k - 1);
            if (4 * d[k] * d[k - 2] < 3 * d[k - 1] * d[k - 1] - 4 * lambda[k][k - 1] * lambda[k][k - 1]) {
                swapi(k);
                if (k > 2) --k;
                continue;
            }
            break;
        }
        for (std::size_t l = k - 1; l-- > 1;) redi(k, l);
        ++k;
    }
    return b;
}

RelationResult find_relation(const RelationProblem& problem) {
    const std::size_t n = problem.values.size();
    if (n < 2) throw std::invalid_argument("find_relation needs at least two values");
    if (problem.bound < 1) throw std::invalid_argument("find_relation: bound must be >= 1");
    const unsigned digits = problem.digits;
    const double needed = static_cast<double>(n) * std::log10(problem.bound.get_d());
    if (static_cast<double>(digits) + 1e-9 < needed || digits <= kLatticeGuard + 5) {
        std::ostringstream os;
        os << "precision too low: " << n << " values with coefficient bound " << problem.bound.get_str() << " need at least "
           << static_cast<int>(std::ceil(needed)) << " digits (have " << digits << ")";
        throw PrecisionError(os.str());
    }

    PrecisionScope scope(digits + kGuardDigits);
    const Real scale = pow10(static_cast<int>(digits - kLatticeGuard));
    IntMatrix lattice(n, IntVector(n + 1, 0));
    for (std::size_t i = 0; i < n; ++i) {
        lattice[i][i] = 1;
        BigInt z;
        const Real scaled = scale * problem.values[i].value;
        mpfr_get_z(z.get_mpz_t(), scaled.backend().data(), MPFR_RNDN);
        lattice[i][n] = z;
    }
    const IntMatrix reduced = lll_reduce(lattice);

    RelationResult best;
    bool have_best = false;
    RelationResult accepted;
    bool have_accepted = false;
    const Real tol_unit = pow10(-static_cast<int>(digits - kLatticeGuard / 2));
    for (const auto& row : reduced) {
        IntVector v(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(n));
        BigInt maxv = 0;
        for (const auto& x : v) maxv = std::max(maxv, BigInt(abs(x)));
        if (maxv == 0) continue;
        if (problem.anchored > 0 && std::all_of(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(std::min(problem.anchored, n)),
                                                [](const BigInt& x) { return x == 0; }))
            continue;
        for (const auto& x : v) {
            if (x != 0) {
                if (x < 0)
                    for (auto& y : v) y = -y;
                break;
            }
        }
        Real residual = 0;
        for (std::size_t i = 0; i < n; ++i) residual += to_real(v[i]) * problem.values[i].value;
        residual = abs(residual);
        const Real threshold = static_cast<long>(n) * to_real(maxv) * tol_unit;
        RelationResult cand;
        cand.coeffs = v;
        cand.residual = residual;
        cand.threshold = threshold;
        if (!have_best || residual < best.residual) {
            best = cand;
            have_best = true;
        }
        if (maxv <= problem.bound && residual < threshold && !have_accepted) {
            accepted = cand;
            accepted.found = true;
            have_accepted = true;
        }
    }
    if (have_accepted) {
        if (accepted.residual == 0) {
            accepted.confidence = static_cast<double>(digits);
        } else {
            const Real ratio = accepted.threshold / accepted.residual;
            accepted.confidence = static_cast<double>(log10(ratio));
        }
        return accepted;
    }
    best.found = false;
    return best;
}

std::string format_relation(const RelationProblem& problem, const IntVector& v) {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < v.size() && i < problem.values.size(); ++i) {
        if (v[i] == 0) continue;
        if (!first) os << (v[i] < 0 ? " - " : " + ");
        else if (v[i] < 0) os << "-";
        os << BigInt(abs(v[i])).get_str() << "*" << problem.values[i].label;
        first = false;
    }
    if (first) os << "0";
    os << " = 0";
    return os.str();
}

int mzv_dimension(int k) {
    if (k < 0) return 0;
    std::vector<int> dims{1, 0, 1};
    for (int j = 3; j <= k; ++j) dims.push_back(dims[static_cast<std::size_t>(j - 2)] + dims[static_cast<std::size_t>(j - 3)]);
    return dims[static_cast<std::size_t>(k)];
}

std::vector<SignedComposition> mzv_basis(int k) {
    if (k < 2 || k > 12) throw std::out_of_range("mzv_basis: weight must be in [2, 12], got " + std::to_string(k));
    std::vector<SignedComposition> out;
    std::vector<Entry> cur;
    std::function<void(int)> rec = [&](int left) {
        if (left == 0) {
            out.emplace_back(cur);
            return;
        }
        for (int part : {2, 3}) {
            if (part > left) continue;
            cur.push_back({part, 1});
            rec(left - part);
            cur.pop_back();
        }
    };
    rec(k);
    return out;
}

}  // namespace mes
