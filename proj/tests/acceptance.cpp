// Acceptance suite: one pass/fail line per criterion, all exact arithmetic
// (no tolerances anywhere). Exit code = number of failed criteria.

#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "cocal7/g2.hpp"
#include "cocal7/liealg.hpp"
#include "cocal7/linsolve.hpp"
#include "cocal7/literals.hpp"
#include "cocal7/su3.hpp"
#include "oracle.hpp"

using namespace cocal7;

namespace {

int failures = 0;

void criterion(int number, const std::string& what, const std::function<bool()>& body) {
    bool ok = false;
    std::string note;
    try {
        ok = body();
    } catch (const std::exception& e) {
        note = std::string(" (exception: ") + e.what() + ")";
    }
    std::printf("[%s] criterion %2d: %s%s\n", ok ? "PASS" : "FAIL", number, what.c_str(), note.c_str());
    if (!ok) ++failures;
}

const std::vector<std::string> kValidated{"1A", "1B", "1C", "2C", "3A"};

// (omega, expected psi-system facts) frozen from the independent elimination
// oracle; re-verified against it at run time below.
struct PsiCase {
    std::string name;
    std::string omega;
    bool consistent;
    int rank;
};
const std::vector<PsiCase> kPsiCases{
    {"1A", "e^{16}-e^{25}+e^{34}", true, 4},  {"1A", "e^{12}+e^{34}+e^{56}", false, 4},
    {"1B", "e^{15}-e^{24}+e^{36}", true, 7},  {"1C", "e^{15}-e^{24}+e^{36}", true, 7},
    {"2C", "e^{15}-e^{24}+e^{36}", true, 7},  {"3A", "e^{12}+e^{34}+e^{56}", false, 7},
};

LieAlgebra algebra(const std::string& name) { return *catalog(name).algebra; }

// Independent lower-central-series dimensions: structure constants read off
// the coframe differentials, spans ranked by the oracle eliminator.
std::vector<int> series_dims_oracle(const LieAlgebra& L) {
    const int n = L.dimension();
    // c[i][j] = [e_i, e_j] as a coefficient vector
    std::vector<std::vector<std::vector<Rational>>> c(
        static_cast<std::size_t>(n + 1),
        std::vector<std::vector<Rational>>(static_cast<std::size_t>(n + 1),
                                           std::vector<Rational>(static_cast<std::size_t>(n))));
    for (int k = 1; k <= n; ++k)
        for (const auto& [index, coef] : L.differential_of_coframe(k).terms()) {
            int i = index[0], j = index[1];
            c[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)][static_cast<std::size_t>(k - 1)] -= coef;
            c[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)][static_cast<std::size_t>(k - 1)] += coef;
        }
    auto bracket_vec = [&](int i, const std::vector<Rational>& v) {
        std::vector<Rational> out(static_cast<std::size_t>(n));
        for (int j = 1; j <= n; ++j) {
            if (v[static_cast<std::size_t>(j - 1)] == 0) continue;
            for (int k = 0; k < n; ++k)
                out[static_cast<std::size_t>(k)] += v[static_cast<std::size_t>(j - 1)] *
                                                    c[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]
                                                     [static_cast<std::size_t>(k)];
        }
        return out;
    };
    auto rank_of = [](const std::vector<std::vector<Rational>>& rows) {
        if (rows.empty()) return 0;
        return oracle::eliminate(rows, std::vector<Rational>(rows.size())).rank;
    };
    std::vector<std::vector<Rational>> cur;
    for (int i = 0; i < n; ++i) {
        std::vector<Rational> e(static_cast<std::size_t>(n));
        e[static_cast<std::size_t>(i)] = 1;
        cur.push_back(e);
    }
    std::vector<int> dims{n};
    for (;;) {
        std::vector<std::vector<Rational>> next;
        for (int i = 1; i <= n; ++i)
            for (const auto& v : cur) next.push_back(bracket_vec(i, v));
        int d = rank_of(next);
        dims.push_back(d);
        if (d == 0 || d == dims[dims.size() - 2]) break;
        cur = std::move(next);  // spanning set is fine for the next bracket layer
    }
    return dims;
}

std::vector<int> series_dims(const LieAlgebra& L) {
    std::vector<int> dims;
    for (const auto& term : lower_central_series(L)) dims.push_back(term.dimension());
    return dims;
}

bool check_system(const LinearSystem& sys, const SolutionSpace& space) {
    auto elim = oracle::eliminate(sys.matrix, sys.rhs);
    if (space.rank != elim.rank || space.nullity() != elim.nullity || space.consistent() != elim.consistent)
        return false;
    if (space.rank + space.nullity() != sys.columns()) return false;
    auto apply = [&](const std::vector<Rational>& x, int r) {
        Rational acc = 0;
        for (int c = 0; c < sys.columns(); ++c)
            acc += sys.matrix[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] * x[static_cast<std::size_t>(c)];
        return acc;
    };
    if (space.particular)
        for (int r = 0; r < sys.rows(); ++r)
            if (apply(*space.particular, r) != sys.rhs[static_cast<std::size_t>(r)]) return false;
    for (const auto& h : space.basis)
        for (int r = 0; r < sys.rows(); ++r)
            if (apply(h, r) != 0) return false;
    return true;
}

std::string run_cli(const std::string& args, int* exit_code = nullptr) {
    std::string cmd = std::string(COCAL7_CLI_PATH) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return "";
    std::string out;
    char buf[4096];
    while (std::size_t got = fread(buf, 1, sizeof buf, pipe)) out.append(buf, got);
    int status = pclose(pipe);
    if (exit_code) *exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return out;
}

}  // namespace

int main() {
    criterion(1, "Jacobi holds exactly for 1A, 1B, 1C, 2C, 3A; 2B is flagged with its verbatim string", [] {
        for (const auto& name : kValidated) {
            CatalogEntry e = catalog(name);
            if (e.flagged || !e.algebra || !check_jacobi(*e.algebra).ok) return false;
        }
        CatalogEntry b = catalog("2B");
        if (!b.flagged) return false;
        if (b.source != "(0, 0, e^{12}, e^{23}, e^{14+35})") return false;
        bool has_count_diag = false;
        for (const auto& d : b.diagnostics)
            if (d.find("entry count 5") != std::string::npos) has_count_diag = true;
        return has_count_diag;
    });

    criterion(2, "lower central series reaches 0 within 5 steps; 1A = [6,3,0], 1B = [6,4,3,1,0]; oracle agrees", [] {
        for (const auto& name : kValidated) {
            LieAlgebra L = algebra(name);
            auto dims = series_dims(L);
            if (dims.back() != 0) return false;
            if (dims.size() - 1 > 5) return false;  // steps taken to reach 0
            if (dims != series_dims_oracle(L)) return false;
        }
        return series_dims(algebra("1A")) == std::vector<int>{6, 3, 0} &&
               series_dims(algebra("1B")) == std::vector<int>{6, 4, 3, 1, 0};
    });

    criterion(3, "basis_forms(6,3) has 20 elements and basis_forms(7,4) has 35", [] {
        return basis_forms(6, 3).size() == 20 && basis_forms(7, 4).size() == 35;
    });

    criterion(4, "Prop-1 identities on >=100 random candidates; every lambda=1 instance has d psi = sigma, k = 1/2",
              [] {
        std::mt19937 rng(424242);
        int total = 0, lambda_one = 0;
        for (const auto& name : kValidated) {
            LieAlgebra h = algebra(name);
            Subspace zg = center(extend_central(h));
            for (int t = 0; t < 30; ++t) {
                ExteriorForm omega = oracle::random_form(rng, 6, 2, 4);
                ExteriorForm psi = oracle::random_form(rng, 6, 3, 4);
                if (wedge(omega, omega).is_zero() && psi.is_zero()) continue;
                G2Data d = build_phi(h, SU3Data(omega, psi));
                // also exercise X = e_7 + central drift: theta(X) stays 1
                bool canonical_x = t % 3 != 0;
                if (!canonical_x) {
                    Vector x = d.x;
                    for (const auto& zb : zg.basis())
                        if (zb[7] == 0) x = x + oracle::random_rational(rng) * zb;
                    d = G2Data(d.algebra, d.phi, d.theta, x);
                }
                DecomposeResult r = decompose(d, omega);
                if (!r.iota_x_psi_minus_zero || !r.iota_x_sigma_zero) return false;
                auto lambda = conformal_factor(d);
                if (lambda && *lambda == 1 && ce_differential(d.algebra, d.theta).is_zero()) {
                    ++lambda_one;
                    if (!r.d_psi_minus_equals_sigma || !*r.d_psi_minus_equals_sigma) return false;
                }
                // built as sigma = 1/2 omega^2: the recovered scalar must be 1/2
                if (canonical_x && !wedge(omega, omega).is_zero() &&
                    (!r.omega_proportionality || *r.omega_proportionality != Rational(1, 2)))
                    return false;
                ++total;
            }
        }
        // guaranteed lambda = 1 instances: the four solver-found pairs
        const std::map<std::string, std::string> pairs{{"1A", "e^{16}-e^{25}+e^{34}"},
                                                       {"1B", "e^{15}-e^{24}+e^{36}"},
                                                       {"1C", "e^{15}-e^{24}+e^{36}"},
                                                       {"2C", "e^{15}-e^{24}+e^{36}"}};
        for (const auto& [name, omega_lit] : pairs) {
            LieAlgebra h = algebra(name);
            ExteriorForm omega = parse_form(omega_lit, 6);
            SolutionSpace s = solve(generic_psi_system(h, omega));
            if (!s.consistent()) return false;
            ExteriorForm psi = assemble_form(6, s.column_labels, *s.particular);
            G2Data d = build_phi(h, SU3Data(omega, psi));
            auto lambda = conformal_factor(d);
            if (!lambda || *lambda != 1) return false;
            DecomposeResult r = decompose(d, omega);
            if (!r.d_psi_minus_equals_sigma || !*r.d_psi_minus_equals_sigma) return false;
            if (!r.omega_proportionality || *r.omega_proportionality != Rational(1, 2)) return false;
            ++lambda_one;
            ++total;
        }
        return total >= 100 && lambda_one >= 4;
    });

    criterion(5, "decompose(build_phi(h, s)) recovers (psi_minus, 1/2 omega^2) for >=100 random s per algebra", [] {
        std::mt19937 rng(515151);
        for (const auto& name : kValidated) {
            LieAlgebra h = algebra(name);
            int done = 0;
            while (done < 100) {
                ExteriorForm omega = oracle::random_form(rng, 6, 2, 4);
                ExteriorForm psi = oracle::random_form(rng, 6, 3, 4);
                if (wedge(omega, omega).is_zero() && psi.is_zero()) continue;
                G2Data d = build_phi(h, SU3Data(omega, psi));
                DecomposeResult r = decompose(d);
                ExteriorForm om7 = embed(omega, 7);
                if (r.psi_minus != embed(psi, 7)) return false;
                if (r.sigma != Rational(1, 2) * wedge(om7, om7)) return false;
                ++done;
            }
        }
        return true;
    });

    criterion(6, "d.d = 0, Leibniz, Cartan on 1-forms, iota_X iota_X = 0, central L_X = 0: >=100 random each per algebra",
              [] {
        std::mt19937 rng(616161);
        for (const auto& name : kValidated) {
            LieAlgebra L = algebra(name);
            Subspace z = center(L);
            for (int t = 0; t < 100; ++t) {
                ExteriorForm a = oracle::random_form(rng, 6, t % 5, 4);
                if (!ce_differential(L, ce_differential(L, a)).is_zero()) return false;

                int ka = 1 + t % 3;
                ExteriorForm u = oracle::random_form(rng, 6, ka, 3);
                ExteriorForm v = oracle::random_form(rng, 6, 1 + (t / 3) % 2, 3);
                ExteriorForm second = wedge(u, ce_differential(L, v));
                if (ka % 2 == 1) second *= Rational(-1);
                if (ce_differential(L, wedge(u, v)) != wedge(ce_differential(L, u), v) + second) return false;

                ExteriorForm alpha = oracle::random_form(rng, 6, 1, 3);
                Vector x = oracle::random_vector(rng, 6);
                Vector y = oracle::random_vector(rng, 6);
                if (evaluate(lie_derivative(L, x, alpha), y) != -evaluate(alpha, bracket(L, x, y))) return false;

                ExteriorForm b = oracle::random_form(rng, 6, 2 + t % 3, 4);
                if (!contract(x, contract(x, b)).is_zero()) return false;

                Vector zx = Vector::zero(6);
                for (const auto& zb : z.basis()) zx = zx + oracle::random_rational(rng) * zb;
                if (!lie_derivative(L, zx, a).is_zero()) return false;
            }
        }
        return true;
    });

    criterion(7, "solver soundness: substitution exact on every psi/phi system; rank and nullity match the oracle", [] {
        for (const auto& pc : kPsiCases) {
            LieAlgebra h = algebra(pc.name);
            ExteriorForm omega = parse_form(pc.omega, 6);
            LinearSystem sys = generic_psi_system(h, omega);
            SolutionSpace space = solve(sys);
            if (!check_system(sys, space)) return false;
            if (space.consistent() != pc.consistent || space.rank != pc.rank) return false;
            if (space.consistent()) {
                ExteriorForm psi = assemble_form(6, space.column_labels, *space.particular);
                if (ce_differential(h, psi) != Rational(1, 2) * wedge(omega, omega)) return false;
                for (const auto& hvec : space.basis) {
                    ExteriorForm hpsi = assemble_form(6, space.column_labels, hvec);
                    if (!ce_differential(h, hpsi).is_zero()) return false;
                }
            }
        }
        for (const auto& name : kValidated) {
            LieAlgebra g = extend_central(algebra(name));
            ExteriorForm theta = parse_form("e^{7}", 7);
            LinearSystem sys = generic_phi_system(g, theta);
            SolutionSpace space = solve(sys);
            if (!check_system(sys, space)) return false;
            for (const auto& hvec : space.basis) {
                ExteriorForm phi = assemble_form(7, space.column_labels, hvec);
                if (ce_differential(g, phi) != wedge(theta, phi)) return false;
            }
        }
        return true;
    });

    criterion(8, "abelian 7-dim, theta = e^7: nullspace dimension exactly 20, no element with theta ^ phi != 0", [] {
        LieAlgebra ab = LieAlgebra::abelian(7);
        ExteriorForm theta = parse_form("e^{7}", 7);
        LinearSystem sys = generic_phi_system(ab, theta);
        SolutionSpace space = solve(sys);
        if (!check_system(sys, space)) return false;
        if (space.nullity() != 20) return false;
        return !theta_wedge_claim(space, theta).exists();
    });

    criterion(9, "CLI claim verdicts match golden values: dimension 20 and a positive claim for every catalog algebra",
              [] {
        for (const auto& name : kValidated) {
            int code = -1;
            std::string out =
                run_cli("--format json solve " + name + " --mode phi --extend --theta 'e^{7}'", &code);
            if (code != 0) return false;
            auto doc = nlohmann::json::parse(out, nullptr, false);
            if (doc.is_discarded()) return false;
            if (doc["result"]["nullity"] != 20) return false;
            if (doc["result"]["claim"]["nondegenerate_solution_exists"] != true) return false;
            // golden values were recorded after the first oracle-verified run;
            // re-assert oracle agreement here
            LieAlgebra g = extend_central(algebra(name));
            LinearSystem sys = generic_phi_system(g, parse_form("e^{7}", 7));
            auto elim = oracle::eliminate(sys.matrix, sys.rhs);
            if (elim.nullity != 20) return false;
        }
        return true;
    });

    criterion(10, "repeated identical CLI invocations produce byte-identical reports", [] {
        const std::vector<std::string> invocations{
            "catalog",
            "parse '(0,0,0,e^{12},e^{13},e^{23})'",
            "solve 1A --mode psi --omega 'e^{16}-e^{25}+e^{34}'",
            "solve 1A --mode phi --extend --theta 'e^{7}'",
            "--format json solve 3A --mode phi --extend --theta 'e^{7}'",
            "verify 1A --extend --phi '-e^{1256}+e^{1346}-e^{2345}-e^{4567}' --theta 'e^{7}'",
        };
        for (const auto& args : invocations) {
            int code_a = -1, code_b = -1;
            std::string a = run_cli(args, &code_a);
            std::string b = run_cli(args, &code_b);
            if (a.empty() || a != b || code_a != code_b) return false;
        }
        return true;
    });

    if (failures == 0)
        std::printf("all criteria passed\n");
    else
        std::printf("%d criteria FAILED\n", failures);
    return failures;
}
