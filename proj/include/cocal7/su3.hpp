#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "cocal7/exterior.hpp"
#include "cocal7/liealg.hpp"

namespace cocal7 {

/// SU(3)-structure candidate on a 6-dimensional algebra: a 2-form omega and a
/// 3-form psi_minus, optionally with the companion 3-form psi_plus.
/// Non-degeneracy of omega is checked by the operations that need it.
struct SU3Data {
    ExteriorForm omega;
    ExteriorForm psi_minus;
    std::optional<ExteriorForm> psi_plus;

    SU3Data(ExteriorForm omega_in, ExteriorForm psi_minus_in, std::optional<ExteriorForm> psi_plus_in = {})
        : omega(std::move(omega_in)), psi_minus(std::move(psi_minus_in)), psi_plus(std::move(psi_plus_in)) {
        check(omega, 2, "omega");
        check(psi_minus, 3, "psi_minus");
        if (psi_plus) check(*psi_plus, 3, "psi_plus");
    }

  private:
    static void check(const ExteriorForm& f, int degree, const char* what) {
        if (f.dimension() != 6) throw std::invalid_argument(std::string(what) + " must live in dimension 6");
        if (!f.is_zero() && f.degree() != degree)
            throw std::invalid_argument(std::string(what) + " has wrong degree");
    }
};

enum class HalfFlatKind {
    proportional,  // d(psi_minus) = k omega^2 with k != 0
    degenerate,    // d(psi_minus) = 0 (k = 0 boundary, or omega^2 = 0 as well)
    none,          // no scalar relation
};

struct HalfFlatResult {
    HalfFlatKind kind = HalfFlatKind::none;
    std::optional<Rational> k;  // set iff proportional
};

namespace detail {

/// Unique k with a = k * b, when it exists. For b = 0: k = 0 iff a = 0, else
/// no k. For a = 0, b != 0: k = 0.
inline std::optional<Rational> proportionality(const ExteriorForm& a, const ExteriorForm& b) {
    if (a.is_zero()) return Rational(0);
    if (b.is_zero()) return std::nullopt;
    const auto& [index, ca] = *a.terms().begin();
    Rational cb = b.coefficient(index);
    if (cb == 0) return std::nullopt;
    Rational k = ca / cb;
    ExteriorForm residual = a - k * b;
    if (!residual.is_zero()) return std::nullopt;
    return k;
}

}  // namespace detail

/// Tests d(psi_minus) = k omega^2 exactly. k != 0 is reported as
/// proportional; d(psi_minus) = 0 is the degenerate boundary (whether or not
/// omega^2 vanishes); anything else is no relation.
inline HalfFlatResult nearly_half_flat_scalar(const LieAlgebra& h, const SU3Data& s) {
    detail::require_validated(h, "nearly_half_flat_scalar");
    if (h.dimension() != 6) throw std::invalid_argument("nearly_half_flat_scalar: algebra must be 6-dimensional");
    ExteriorForm dpsi = ce_differential(h, s.psi_minus);
    ExteriorForm om2 = wedge(s.omega, s.omega);
    HalfFlatResult out;
    if (dpsi.is_zero()) {
        out.kind = HalfFlatKind::degenerate;
        return out;
    }
    auto k = detail::proportionality(dpsi, om2);
    if (k && *k != 0) {
        out.kind = HalfFlatKind::proportional;
        out.k = *k;
    }
    return out;
}

/// Induced-metric report. g is computed entry-wise from
///   g(e_i, e_j) omega^3 = -3 iota_{e_i} omega ^ iota_{e_j} psi_minus ^ psi_minus
/// with no symmetrization applied; symmetry, degeneracy and the signature of
/// the symmetrized matrix are diagnostics.
struct MetricReport {
    std::array<std::array<Rational, 6>, 6> g{};
    bool symmetric = true;
    Rational det_symmetrized;       // determinant of (g + g^T)/2
    int positive = 0, negative = 0, zero = 0;  // signature of (g + g^T)/2

    bool degenerate() const { return det_symmetrized == 0; }
};

namespace detail {

/// Signature of a symmetric rational matrix by congruence diagonalization.
inline void signature(std::vector<std::vector<Rational>> a, int& positive, int& negative, int& zero) {
    positive = negative = zero = 0;
    const int n = static_cast<int>(a.size());
    std::vector<int> active;
    for (int i = 0; i < n; ++i) active.push_back(i);
    while (!active.empty()) {
        // prefer a nonzero diagonal pivot
        int pivot = -1;
        for (int i : active) {
            if (a[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] != 0) {
                pivot = i;
                break;
            }
        }
        if (pivot < 0) {
            // all active diagonal entries vanish; mix in an off-diagonal one
            int pi = -1, pj = -1;
            for (std::size_t s = 0; s < active.size() && pi < 0; ++s)
                for (std::size_t t = s + 1; t < active.size(); ++t)
                    if (a[static_cast<std::size_t>(active[s])][static_cast<std::size_t>(active[t])] != 0) {
                        pi = active[s];
                        pj = active[t];
                        break;
                    }
            if (pi < 0) {
                zero += static_cast<int>(active.size());
                return;
            }
            // congruence e_pi += e_pj: new a[pi][pi] = 2 a[pi][pj] != 0
            for (int r = 0; r < n; ++r)
                a[static_cast<std::size_t>(r)][static_cast<std::size_t>(pi)] +=
                    a[static_cast<std::size_t>(r)][static_cast<std::size_t>(pj)];
            for (int c = 0; c < n; ++c)
                a[static_cast<std::size_t>(pi)][static_cast<std::size_t>(c)] +=
                    a[static_cast<std::size_t>(pj)][static_cast<std::size_t>(c)];
            pivot = pi;
        }
        Rational d = a[static_cast<std::size_t>(pivot)][static_cast<std::size_t>(pivot)];
        if (d > 0)
            ++positive;
        else
            ++negative;
        // clear row/column `pivot` on the remaining active block
        std::vector<int> rest;
        for (int i : active)
            if (i != pivot) rest.push_back(i);
        for (int r : rest) {
            Rational f = a[static_cast<std::size_t>(r)][static_cast<std::size_t>(pivot)] / d;
            if (f == 0) continue;
            for (int c : rest)
                a[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] -=
                    f * a[static_cast<std::size_t>(pivot)][static_cast<std::size_t>(c)];
            a[static_cast<std::size_t>(r)][static_cast<std::size_t>(pivot)] = 0;
            a[static_cast<std::size_t>(pivot)][static_cast<std::size_t>(r)] = 0;
        }
        active = std::move(rest);
    }
}

}  // namespace detail

inline MetricReport induced_metric(const LieAlgebra& h, const SU3Data& s) {
    detail::require_validated(h, "induced_metric");
    if (h.dimension() != 6) throw std::invalid_argument("induced_metric: algebra must be 6-dimensional");
    ExteriorForm om3 = wedge(wedge(s.omega, s.omega), s.omega);
    if (om3.is_zero()) throw std::domain_error("induced_metric: omega^3 = 0 (omega degenerate)");
    IndexTuple top{1, 2, 3, 4, 5, 6};
    Rational c3 = om3.coefficient(top);

    MetricReport report;
    std::vector<ExteriorForm> iota_omega, iota_psi;
    for (int i = 1; i <= 6; ++i) {
        iota_omega.push_back(contract(Vector::frame(6, i), s.omega));
        iota_psi.push_back(contract(Vector::frame(6, i), s.psi_minus));
    }
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) {
            ExteriorForm six = wedge(wedge(iota_omega[static_cast<std::size_t>(i)],
                                           iota_psi[static_cast<std::size_t>(j)]),
                                     s.psi_minus);
            report.g[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                Rational(-3) * six.coefficient(top) / c3;
        }

    std::vector<std::vector<Rational>> sym(6, std::vector<Rational>(6));
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) {
            if (report.g[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] !=
                report.g[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)])
                report.symmetric = false;
            sym[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                (report.g[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] +
                 report.g[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)]) /
                2;
        }
    report.det_symmetrized = detail::determinant(sym);
    detail::signature(std::move(sym), report.positive, report.negative, report.zero);
    return report;
}

/// Volume-compatibility diagnostic: the exact ratio of the top coefficients
/// of psi_plus ^ psi_minus and omega^3. The adopted normalization target is
/// r = 2/3 (the value of the standard flat data); purely informational.
struct VolumeReport {
    Rational ratio;
    bool normalized = false;
};

inline VolumeReport volume_compatibility(const SU3Data& s) {
    if (!s.psi_plus) throw std::logic_error("volume_compatibility: psi_plus not present");
    ExteriorForm om3 = wedge(wedge(s.omega, s.omega), s.omega);
    if (om3.is_zero()) throw std::domain_error("volume_compatibility: omega^3 = 0 (omega degenerate)");
    IndexTuple top{1, 2, 3, 4, 5, 6};
    VolumeReport report;
    report.ratio = wedge(*s.psi_plus, s.psi_minus).coefficient(top) / om3.coefficient(top);
    report.normalized = report.ratio == Rational(2, 3);
    return report;
}

}  // namespace cocal7
