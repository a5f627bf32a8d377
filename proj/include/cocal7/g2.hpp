#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

#include "cocal7/exterior.hpp"
#include "cocal7/liealg.hpp"
#include "cocal7/su3.hpp"

namespace cocal7 {

/// Candidate for a locally conformally cocalibrated structure on a
/// 7-dimensional algebra: the 4-form phi, the Lee form theta and the
/// distinguished direction X. Construction only checks shapes; the defining
/// conditions (d theta = 0, theta(X) = 1, phi != 0, d phi = theta ^ phi) are
/// what verify_lcc measures and reports.
struct G2Data {
    LieAlgebra algebra;
    ExteriorForm phi;
    ExteriorForm theta;
    Vector x;

    G2Data(LieAlgebra algebra_in, ExteriorForm phi_in, ExteriorForm theta_in, Vector x_in)
        : algebra(std::move(algebra_in)), phi(std::move(phi_in)), theta(std::move(theta_in)), x(std::move(x_in)) {
        if (algebra.dimension() != 7) throw std::invalid_argument("G2Data: algebra must be 7-dimensional");
        if (phi.dimension() != 7 || (!phi.is_zero() && phi.degree() != 4))
            throw std::invalid_argument("G2Data: phi must be a 4-form in dimension 7");
        if (theta.dimension() != 7 || (!theta.is_zero() && theta.degree() != 1))
            throw std::invalid_argument("G2Data: theta must be a 1-form in dimension 7");
        if (x.n != 7) throw std::invalid_argument("G2Data: X must be 7-dimensional");
    }

    Rational theta_of_x() const { return theta.is_zero() ? Rational(0) : evaluate(theta, x); }
};

/// The canonical ansatz over the central extension g = h + R e_7:
/// phi = 1/2 omega^2 + psi_minus ^ e^7, theta = e^7, X = e_7.
inline G2Data build_phi(const LieAlgebra& h, const SU3Data& s) {
    detail::require_validated(h, "build_phi");
    if (h.dimension() != 6) throw std::invalid_argument("build_phi: algebra must be 6-dimensional");
    LieAlgebra g = extend_central(h);
    ExteriorForm e7 = ExteriorForm::basis(7, IndexTuple{7});
    ExteriorForm phi = Rational(1, 2) * wedge(embed(s.omega, 7), embed(s.omega, 7)) +
                       wedge(embed(s.psi_minus, 7), e7);
    if (phi.is_zero()) throw std::domain_error("build_phi: phi = 0 (both omega^2 and psi_minus vanish)");
    return G2Data(std::move(g), std::move(phi), std::move(e7), Vector::frame(7, 7));
}

/// The scalar lambda with d phi = lambda theta ^ phi, when one exists.
/// lambda = 0 means cocalibrated (d phi = 0); no value means d phi is not a
/// multiple of theta ^ phi.
inline std::optional<Rational> conformal_factor(const G2Data& d) {
    detail::require_validated(d.algebra, "conformal_factor");
    ExteriorForm dphi = ce_differential(d.algebra, d.phi);
    return detail::proportionality(dphi, wedge(d.theta, d.phi));
}

/// Decomposition of phi along X: psi_minus = -iota_X phi and
/// sigma = phi - psi_minus ^ theta, plus the exact identity checks that come
/// with it. Requires theta(X) = 1.
struct DecomposeResult {
    ExteriorForm psi_minus;
    ExteriorForm sigma;
    bool iota_x_psi_minus_zero = false;
    bool iota_x_sigma_zero = false;
    // Evaluated only when the conformal factor is exactly 1.
    std::optional<bool> d_psi_minus_equals_sigma;
    // k with sigma = k omega^2, when an omega is supplied and the relation holds.
    std::optional<Rational> omega_proportionality;

    DecomposeResult() : psi_minus(7, 3), sigma(7, 4) {}
};

inline DecomposeResult decompose(const G2Data& d, const std::optional<ExteriorForm>& omega = {}) {
    if (d.theta_of_x() != 1) throw std::domain_error("decompose: theta(X) != 1");
    DecomposeResult out;
    out.psi_minus = -contract(d.x, d.phi);
    out.sigma = d.phi - wedge(out.psi_minus, d.theta);
    out.iota_x_psi_minus_zero = contract(d.x, out.psi_minus).is_zero();
    out.iota_x_sigma_zero = contract(d.x, out.sigma).is_zero();
    if (auto lambda = conformal_factor(d); lambda && *lambda == 1)
        out.d_psi_minus_equals_sigma = ce_differential(d.algebra, out.psi_minus) == out.sigma;
    if (omega) {
        ExteriorForm om7 = omega->dimension() == 7 ? *omega : embed(*omega, 7);
        out.omega_proportionality = detail::proportionality(out.sigma, wedge(om7, om7));
    }
    return out;
}

enum class LccVerdict {
    lccc,                 // d theta = 0, lambda = 1, theta ^ phi != 0
    cocalibrated,         // lambda = 0 (d phi = 0)
    conformal_other,      // some other exact lambda
    no_scalar_relation,   // d phi not proportional to theta ^ phi
    vanishing_lee_form,   // theta = 0
};

inline std::string to_string(LccVerdict v) {
    switch (v) {
        case LccVerdict::lccc: return "L.C.CC";
        case LccVerdict::cocalibrated: return "cocalibrated";
        case LccVerdict::conformal_other: return "conformal (lambda != 1)";
        case LccVerdict::no_scalar_relation: return "no scalar relation";
        case LccVerdict::vanishing_lee_form: return "rejected: vanishing Lee form";
    }
    return "?";
}

/// Nearly half-flat check of the decomposed pair on the quotient frame
/// (available when X = e_7 and nothing involves the index 7). Without a
/// supplied omega the comparison uses omega^2 := 2 sigma, which reproduces
/// the defining scalar of the canonical ansatz.
struct QuotientReport {
    bool available = false;
    std::string note;
    HalfFlatResult half_flat;
};

/// Full verification record for a candidate. Everything is recomputed from
/// (algebra, phi, theta, X); nothing is inferred from how the data was built.
struct LccReport {
    bool theta_nonzero = false;
    bool theta_closed = false;
    bool theta_wedge_phi_nonzero = false;
    bool phi_nonzero = false;
    Rational theta_of_x;
    bool x_rescaled = false;  // X was scaled to make theta(X) = 1
    std::optional<Rational> lambda;
    std::optional<DecomposeResult> decomposition;
    std::optional<bool> d_sigma_zero;                     // evaluated when lambda = 1
    std::optional<bool> theta_wedge_phi_plus_sigma_zero;  // constraint from the d sigma line
    QuotientReport quotient;
    LccVerdict verdict = LccVerdict::no_scalar_relation;
};

inline LccReport verify_lcc(const G2Data& d, const std::optional<ExteriorForm>& omega = {}) {
    detail::require_validated(d.algebra, "verify_lcc");
    LccReport report;
    report.phi_nonzero = !d.phi.is_zero();
    report.theta_nonzero = !d.theta.is_zero();
    report.theta_closed = ce_differential(d.algebra, d.theta).is_zero();
    report.theta_wedge_phi_nonzero = !wedge(d.theta, d.phi).is_zero();
    report.lambda = conformal_factor(d);
    report.theta_of_x = d.theta_of_x();

    G2Data work = d;
    if (report.theta_of_x != 0 && report.theta_of_x != 1) {
        work.x = (1 / report.theta_of_x) * work.x;
        report.x_rescaled = true;
    }
    if (work.theta_of_x() == 1) {
        report.decomposition = decompose(work, omega);
        const ExteriorForm& sigma = report.decomposition->sigma;
        if (report.lambda && *report.lambda == 1)
            report.d_sigma_zero = ce_differential(work.algebra, sigma).is_zero();
        report.theta_wedge_phi_plus_sigma_zero = wedge(work.theta, work.phi + sigma).is_zero();

        // Quotient frame check, only for the distinguished direction e_7.
        if (work.x == Vector::frame(7, 7)) {
            bool restrictable = work.algebra.differential_of_coframe(7).is_zero();
            for (int i = 1; i <= 6 && restrictable; ++i) {
                for (const auto& [index, c] : work.algebra.differential_of_coframe(i).terms())
                    if (index.contains(7)) restrictable = false;
            }
            for (const auto& [index, c] : report.decomposition->psi_minus.terms())
                if (index.contains(7)) restrictable = false;
            for (const auto& [index, c] : sigma.terms())
                if (index.contains(7)) restrictable = false;
            if (restrictable) {
                std::vector<ExteriorForm> dh;
                for (int i = 1; i <= 6; ++i) dh.push_back(restrict_to(work.algebra.differential_of_coframe(i), 6));
                LieAlgebra h = LieAlgebra::from_differentials(std::move(dh)).validated();
                ExteriorForm psi6 = restrict_to(report.decomposition->psi_minus, 6);
                report.quotient.available = true;
                if (omega) {
                    ExteriorForm om6 = omega->dimension() == 6 ? *omega : restrict_to(*omega, 6);
                    report.quotient.half_flat = nearly_half_flat_scalar(h, SU3Data(om6, psi6));
                    report.quotient.note = "against supplied omega";
                } else {
                    // omega^2 read off as 2 sigma
                    ExteriorForm dpsi = ce_differential(h, psi6);
                    ExteriorForm om2 = Rational(2) * restrict_to(sigma, 6);
                    HalfFlatResult hf;
                    if (dpsi.is_zero()) {
                        hf.kind = HalfFlatKind::degenerate;
                    } else if (auto k = detail::proportionality(dpsi, om2); k && *k != 0) {
                        hf.kind = HalfFlatKind::proportional;
                        hf.k = *k;
                    }
                    report.quotient.half_flat = hf;
                    report.quotient.note = "against omega^2 := 2 sigma";
                }
            } else {
                report.quotient.note = "frame does not split off e_7";
            }
        } else {
            report.quotient.note = "X is not the frame vector e_7";
        }
    }

    if (!report.theta_nonzero)
        report.verdict = LccVerdict::vanishing_lee_form;
    else if (report.lambda && *report.lambda == 1 && report.theta_closed && report.theta_wedge_phi_nonzero)
        report.verdict = LccVerdict::lccc;
    else if (report.lambda && *report.lambda == 0)
        report.verdict = LccVerdict::cocalibrated;
    else if (report.lambda)
        report.verdict = LccVerdict::conformal_other;
    else
        report.verdict = LccVerdict::no_scalar_relation;
    return report;
}

}  // namespace cocal7
