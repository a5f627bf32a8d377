#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "cocal7/exterior.hpp"
#include "cocal7/liealg.hpp"

namespace cocal7 {

/// Dense rational linear system A x = b. Columns are labeled by the index
/// tuples of the unknown form coefficients; rows by the equation's basis
/// element (one scalar equation per basis form of the target degree).
struct LinearSystem {
    std::vector<std::vector<Rational>> matrix;
    std::vector<Rational> rhs;
    std::vector<IndexTuple> column_labels;
    std::vector<IndexTuple> row_labels;

    int rows() const { return static_cast<int>(matrix.size()); }
    int columns() const { return static_cast<int>(column_labels.size()); }

    void validate() const {
        if (matrix.size() != rhs.size()) throw std::invalid_argument("system: row count != rhs size");
        if (!row_labels.empty() && row_labels.size() != matrix.size())
            throw std::invalid_argument("system: row label count mismatch");
        for (const auto& row : matrix)
            if (row.size() != column_labels.size()) throw std::invalid_argument("system: ragged matrix");
    }
};

/// Exact affine solution set: particular solution (absent iff inconsistent)
/// plus a basis of the homogeneous solutions.
struct SolutionSpace {
    std::optional<std::vector<Rational>> particular;
    std::vector<std::vector<Rational>> basis;
    std::vector<IndexTuple> column_labels;
    int rank = 0;

    bool consistent() const { return particular.has_value(); }
    int nullity() const { return static_cast<int>(basis.size()); }
};

/// Gauss-Jordan elimination over the rationals. Deterministic pivot rule:
/// for each column in order, the first remaining row with a nonzero entry.
inline SolutionSpace solve(const LinearSystem& sys) {
    sys.validate();
    const int rows = sys.rows();
    const int cols = sys.columns();
    std::vector<std::vector<Rational>> m = sys.matrix;
    std::vector<Rational> b = sys.rhs;

    std::vector<int> pivot_cols;
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int pr = -1;
        for (int i = r; i < rows; ++i) {
            if (m[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)] != 0) {
                pr = i;
                break;
            }
        }
        if (pr < 0) continue;
        std::swap(m[static_cast<std::size_t>(pr)], m[static_cast<std::size_t>(r)]);
        std::swap(b[static_cast<std::size_t>(pr)], b[static_cast<std::size_t>(r)]);
        Rational inv = 1 / m[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
        for (auto& x : m[static_cast<std::size_t>(r)]) x *= inv;
        b[static_cast<std::size_t>(r)] *= inv;
        for (int i = 0; i < rows; ++i) {
            if (i == r) continue;
            Rational f = m[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)];
            if (f == 0) continue;
            for (int j = 0; j < cols; ++j)
                m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] -=
                    f * m[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)];
            b[static_cast<std::size_t>(i)] -= f * b[static_cast<std::size_t>(r)];
        }
        pivot_cols.push_back(c);
        ++r;
    }

    SolutionSpace out;
    out.column_labels = sys.column_labels;
    out.rank = static_cast<int>(pivot_cols.size());

    bool consistent = true;
    for (int i = out.rank; i < rows; ++i) {
        if (b[static_cast<std::size_t>(i)] != 0) {
            consistent = false;
            break;
        }
    }
    if (consistent) {
        std::vector<Rational> part(static_cast<std::size_t>(cols));
        for (std::size_t pr = 0; pr < pivot_cols.size(); ++pr)
            part[static_cast<std::size_t>(pivot_cols[pr])] = b[pr];
        out.particular = std::move(part);
    }

    std::vector<bool> is_pivot(static_cast<std::size_t>(cols), false);
    for (int c : pivot_cols) is_pivot[static_cast<std::size_t>(c)] = true;
    for (int f = 0; f < cols; ++f) {
        if (is_pivot[static_cast<std::size_t>(f)]) continue;
        std::vector<Rational> v(static_cast<std::size_t>(cols));
        v[static_cast<std::size_t>(f)] = 1;
        for (std::size_t pr = 0; pr < pivot_cols.size(); ++pr)
            v[static_cast<std::size_t>(pivot_cols[pr])] = -m[pr][static_cast<std::size_t>(f)];
        out.basis.push_back(std::move(v));
    }
    return out;
}

/// Rebuilds a form from coordinates in a labeled column basis.
inline ExteriorForm assemble_form(int n, std::span<const IndexTuple> labels, std::span<const Rational> coords) {
    if (labels.size() != coords.size()) throw std::invalid_argument("assemble_form: size mismatch");
    int degree = labels.empty() ? 0 : labels[0].degree();
    ExteriorForm f(n, degree);
    for (std::size_t i = 0; i < labels.size(); ++i) f.add_term(labels[i], coords[i]);
    return f;
}

/// Linear system for d(psi) = 1/2 omega^2 over the 20 generic 3-form
/// coefficients on a 6-dimensional algebra. One equation per 4-form basis
/// element.
inline LinearSystem generic_psi_system(const LieAlgebra& h, const ExteriorForm& omega) {
    detail::require_validated(h, "generic_psi_system");
    if (h.dimension() != 6) throw std::invalid_argument("generic_psi_system: algebra must be 6-dimensional");
    if (omega.dimension() != 6 || (!omega.is_zero() && omega.degree() != 2))
        throw std::invalid_argument("generic_psi_system: omega must be a 2-form in dimension 6");

    LinearSystem sys;
    sys.column_labels = basis_forms(6, 3);
    sys.row_labels = basis_forms(6, 4);
    ExteriorForm rhs_form = Rational(1, 2) * wedge(omega, omega);

    std::vector<ExteriorForm> d_of_basis;
    d_of_basis.reserve(sys.column_labels.size());
    for (const auto& label : sys.column_labels)
        d_of_basis.push_back(ce_differential(h, ExteriorForm::basis(6, label)));

    for (const auto& row_label : sys.row_labels) {
        std::vector<Rational> row;
        row.reserve(sys.column_labels.size());
        for (const auto& d : d_of_basis) row.push_back(d.coefficient(row_label));
        sys.matrix.push_back(std::move(row));
        sys.rhs.push_back(rhs_form.coefficient(row_label));
    }
    return sys;
}

enum class ThetaPolicy {
    permissive,        // theta = 0 accepted; the system degenerates to d(phi) = 0
    require_nonzero,   // theta = 0 rejected
};

/// Homogeneous system for d(phi) = theta ^ phi over the 35 generic 4-form
/// coefficients on a 7-dimensional algebra, for a fixed closed theta. One
/// equation per 5-form basis element.
inline LinearSystem generic_phi_system(const LieAlgebra& g, const ExteriorForm& theta,
                                       ThetaPolicy policy = ThetaPolicy::permissive) {
    detail::require_validated(g, "generic_phi_system");
    if (g.dimension() != 7) throw std::invalid_argument("generic_phi_system: algebra must be 7-dimensional");
    if (theta.dimension() != 7 || (!theta.is_zero() && theta.degree() != 1))
        throw std::invalid_argument("generic_phi_system: theta must be a 1-form in dimension 7");
    if (!ce_differential(g, theta).is_zero())
        throw std::invalid_argument("generic_phi_system: theta must be closed");
    if (policy == ThetaPolicy::require_nonzero && theta.is_zero())
        throw std::invalid_argument("generic_phi_system: theta must be nonzero");

    LinearSystem sys;
    sys.column_labels = basis_forms(7, 4);
    sys.row_labels = basis_forms(7, 5);

    std::vector<ExteriorForm> lhs_minus_rhs;
    lhs_minus_rhs.reserve(sys.column_labels.size());
    for (const auto& label : sys.column_labels) {
        ExteriorForm basis = ExteriorForm::basis(7, label);
        lhs_minus_rhs.push_back(ce_differential(g, basis) - wedge(theta, basis));
    }

    for (const auto& row_label : sys.row_labels) {
        std::vector<Rational> row;
        row.reserve(sys.column_labels.size());
        for (const auto& d : lhs_minus_rhs) row.push_back(d.coefficient(row_label));
        sys.matrix.push_back(std::move(row));
        sys.rhs.emplace_back(0);
    }
    return sys;
}

/// Per-basis-element report of theta ^ phi != 0 over a homogeneous solution
/// space, plus the existence verdict: some solution has theta ^ phi != 0 iff
/// some basis element does (the map phi -> theta ^ phi is linear).
struct NondegenerateClaim {
    std::vector<bool> basis_nonzero;
    std::optional<int> witness;  // index of the first such basis element
    bool exists() const { return witness.has_value(); }
};

inline NondegenerateClaim theta_wedge_claim(const SolutionSpace& space, const ExteriorForm& theta) {
    NondegenerateClaim claim;
    for (std::size_t i = 0; i < space.basis.size(); ++i) {
        ExteriorForm phi = assemble_form(theta.dimension(), space.column_labels, space.basis[i]);
        bool nonzero = !wedge(theta, phi).is_zero();
        claim.basis_nonzero.push_back(nonzero);
        if (nonzero && !claim.witness) claim.witness = static_cast<int>(i);
    }
    return claim;
}

}  // namespace cocal7
