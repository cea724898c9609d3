// SPDX-License-Identifier: Apache-2.0

#include "exactkrylov/core/rational.hpp"

#include <cmath>
#include <cstdint>
#include <cstring>
#include <string>

namespace exactkrylov {

Rational to_rational(double x) {
    require_finite(x, "to_rational");
    return Rational(x);
}

double to_double(const Rational& q) {
    // mpq_get_d truncates toward zero; pick the nearer of the two neighbours.
    const double t = q.get_d();
    if (Rational(t) == q) return t;
    const double away = std::nextafter(t, q > 0 ? HUGE_VAL : -HUGE_VAL);
    if (!std::isfinite(away)) return t;
    const Rational dt = abs(q - Rational(t));
    const Rational da = abs(Rational(away) - q);
    if (dt < da) return t;
    if (da < dt) return away;
    std::int64_t bits_t;
    static_assert(sizeof bits_t == sizeof t);
    std::memcpy(&bits_t, &t, sizeof t);
    return (bits_t & 1) == 0 ? t : away;
}

RationalVector matvec(const RationalMatrix& A, const RationalVector& x) {
    if (A.cols() != x.size()) throw DimensionMismatch("rational matvec: shape mismatch");
    RationalVector y(A.rows());
    for (std::size_t r = 0; r < A.rows(); ++r) {
        Rational acc = 0;
        for (std::size_t c = 0; c < A.cols(); ++c) {
            if (sgn(A(r, c)) == 0 || sgn(x[c]) == 0) continue;
            acc += A(r, c) * x[c];
        }
        y[r] = acc;
    }
    return y;
}

Rational dot(const RationalVector& x, const RationalVector& y) {
    if (x.size() != y.size()) throw DimensionMismatch("rational dot: length mismatch");
    Rational acc = 0;
    for (std::size_t i = 0; i < x.size(); ++i) acc += x[i] * y[i];
    return acc;
}

RationalVector difference(const RationalVector& x, const RationalVector& y) {
    if (x.size() != y.size()) throw DimensionMismatch("rational difference: length mismatch");
    RationalVector z(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) z[i] = x[i] - y[i];
    return z;
}

Rational energy(const RationalMatrix& A, const RationalVector& x) {
    return dot(x, matvec(A, x));
}

bool is_symmetric(const RationalMatrix& A) {
    if (A.rows() != A.cols()) return false;
    for (std::size_t r = 0; r < A.rows(); ++r)
        for (std::size_t c = r + 1; c < A.cols(); ++c)
            if (A(r, c) != A(c, r)) return false;
    return true;
}

RationalVector solve_spd_exact(const RationalMatrix& A, const RationalVector& b) {
    const std::size_t n = A.rows();
    if (A.cols() != n || b.size() != n) throw DimensionMismatch("solve_spd_exact: shape mismatch");
    if (!is_symmetric(A)) throw PreconditionViolation("solve_spd_exact: matrix is not symmetric");

    // Scale each row of [A | b] by the lcm of its denominators (a positive
    // factor, so the signs of the leading principal minors are unchanged).
    std::vector<std::vector<mpz_class>> M(n, std::vector<mpz_class>(n + 1));
    for (std::size_t r = 0; r < n; ++r) {
        mpz_class l = 1;
        for (std::size_t c = 0; c < n; ++c) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), A(r, c).get_den_mpz_t());
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), b[r].get_den_mpz_t());
        for (std::size_t c = 0; c < n; ++c) M[r][c] = A(r, c).get_num() * (l / A(r, c).get_den());
        M[r][n] = b[r].get_num() * (l / b[r].get_den());
    }

    mpz_class prev = 1;
    for (std::size_t k = 0; k < n; ++k) {
        if (sgn(M[k][k]) <= 0) {
            throw PreconditionViolation("solve_spd_exact: leading minor " + std::to_string(k + 1) +
                                        " is not positive (matrix not SPD)");
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j <= n; ++j) {
                mpz_class t = M[k][k] * M[i][j] - M[i][k] * M[k][j];
                mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
                M[i][j] = std::move(t);
            }
            M[i][k] = 0;
        }
        prev = M[k][k];
    }

    RationalVector x(n);
    for (std::size_t ii = n; ii-- > 0;) {
        Rational acc(M[ii][n]);
        for (std::size_t j = ii + 1; j < n; ++j) acc -= Rational(M[ii][j]) * x[j];
        x[ii] = acc / Rational(M[ii][ii]);
    }
    return x;
}

}  // namespace exactkrylov
