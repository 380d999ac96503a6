#include "liesurf/exact_linalg.hpp"

#include <utility>

#include "liesurf/errors.hpp"

namespace liesurf {
namespace {

using IntegerMatrix = std::vector<std::vector<mpz_class>>;

struct Echelon {
    IntegerMatrix rows;
    std::vector<std::size_t> pivot_columns;
};

IntegerMatrix to_integer_rows(const RationalMatrix& rows, std::size_t columns) {
    IntegerMatrix out;
    out.reserve(rows.size());
    for (const auto& row : rows) {
        if (row.size() != columns) throw InvariantError("ragged matrix");
        mpz_class scale = 1;
        for (const auto& q : row) mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), q.get_den_mpz_t());
        std::vector<mpz_class> r(columns);
        bool nonzero = false;
        for (std::size_t j = 0; j < columns; ++j) {
            r[j] = row[j].get_num() * (scale / row[j].get_den());
            nonzero = nonzero || r[j] != 0;
        }
        if (nonzero) out.push_back(std::move(r));
    }
    return out;
}

// Fraction-free Gaussian elimination to row echelon form. Every division by
// the previous pivot is exact.
Echelon bareiss(IntegerMatrix a, std::size_t columns) {
    Echelon e;
    mpz_class previous = 1;
    std::size_t r = 0;
    for (std::size_t col = 0; col < columns && r < a.size(); ++col) {
        std::size_t p = r;
        while (p < a.size() && a[p][col] == 0) ++p;
        if (p == a.size()) continue;
        std::swap(a[r], a[p]);
        for (std::size_t i = r + 1; i < a.size(); ++i) {
            for (std::size_t j = col + 1; j < columns; ++j) {
                mpz_class v = a[r][col] * a[i][j] - a[i][col] * a[r][j];
                mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), previous.get_mpz_t());
                a[i][j] = std::move(v);
            }
            a[i][col] = 0;
        }
        previous = a[r][col];
        e.pivot_columns.push_back(col);
        ++r;
    }
    a.resize(r);
    e.rows = std::move(a);
    return e;
}

}  // namespace

std::size_t exact_rank(const RationalMatrix& rows, std::size_t columns) {
    return bareiss(to_integer_rows(rows, columns), columns).pivot_columns.size();
}

std::vector<RationalVector> exact_nullspace(const RationalMatrix& rows, std::size_t columns) {
    const Echelon e = bareiss(to_integer_rows(rows, columns), columns);
    std::vector<bool> is_pivot(columns, false);
    for (auto c : e.pivot_columns) is_pivot[c] = true;

    std::vector<RationalVector> basis;
    for (std::size_t free = 0; free < columns; ++free) {
        if (is_pivot[free]) continue;
        RationalVector x(columns, Rational(0));
        x[free] = 1;
        for (std::size_t k = e.pivot_columns.size(); k-- > 0;) {
            const std::size_t pc = e.pivot_columns[k];
            Rational acc = 0;
            for (std::size_t j = pc + 1; j < columns; ++j)
                if (x[j] != 0 && e.rows[k][j] != 0) acc += Rational(e.rows[k][j]) * x[j];
            x[pc] = -acc / Rational(e.rows[k][pc]);
        }
        // primitive integer representative, first nonzero entry positive
        mpz_class den = 1;
        for (const auto& q : x) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q.get_den_mpz_t());
        mpz_class num_gcd = 0;
        for (const auto& q : x) {
            mpz_class scaled = q.get_num() * (den / q.get_den());
            mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), scaled.get_mpz_t());
        }
        Rational scale(den, num_gcd);
        scale.canonicalize();
        for (const auto& q : x) {
            if (q == 0) continue;
            if (q < 0) scale = -scale;
            break;
        }
        for (auto& q : x) q *= scale;
        basis.push_back(std::move(x));
    }

    for (const auto& v : basis) {
        for (const auto& row : rows) {
            Rational dot = 0;
            for (std::size_t j = 0; j < columns; ++j) dot += row[j] * v[j];
            if (dot != 0) throw InvariantError("nullspace vector fails A x = 0");
        }
    }
    return basis;
}

}  // namespace liesurf
