// cocal7 — command-line surface for the exact exterior-calculus engine:
// parse/validate structure equations, catalog reports, nearly-half-flat and
// L.C.CC coefficient searches, and candidate verification.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cocal7/g2.hpp"
#include "cocal7/liealg.hpp"
#include "cocal7/linsolve.hpp"
#include "cocal7/literals.hpp"
#include "cocal7/report.hpp"
#include "cocal7/su3.hpp"

namespace {

using namespace cocal7;

struct Output {
    std::string format = "text";
    bool strict = false;
};

/// `@path` arguments are replaced by the file contents (trailing whitespace
/// trimmed), so literals can be kept in files.
std::string resolve_arg(const std::string& arg) {
    if (arg.empty() || arg[0] != '@') return arg;
    std::ifstream in(arg.substr(1), std::ios::binary);
    if (!in) throw std::runtime_error("cannot read input file: " + arg.substr(1));
    std::ostringstream ss;
    ss << in.rdbuf();
    std::string text = ss.str();
    while (!text.empty() && (text.back() == '\n' || text.back() == '\r' || text.back() == ' ' || text.back() == '\t'))
        text.pop_back();
    return text;
}

std::string digest_inputs(std::initializer_list<std::string_view> parts) {
    std::string all;
    for (auto p : parts) {
        all += p;
        all += '\0';
    }
    return fnv1a_digest(all);
}

/// Algebra argument: a catalog name or a structure-equation literal.
struct LoadedAlgebra {
    LieAlgebra algebra;
    std::string canonical;
    std::vector<std::string> diagnostics;
};

LoadedAlgebra load_validated_algebra(const std::string& spec, bool extend) {
    std::vector<std::string> diagnostics;
    LieAlgebra parsed = [&] {
        if (!spec.empty() && spec[0] == '(') return parse_salamon(spec);
        CatalogEntry entry = catalog(spec);
        diagnostics = entry.diagnostics;
        if (entry.flagged) {
            std::string joined;
            for (const auto& d : entry.diagnostics) joined += (joined.empty() ? "" : "; ") + d;
            throw std::domain_error("catalog entry " + entry.name + " is flagged: " + joined);
        }
        return *entry.algebra;
    }();
    LieAlgebra validated = parsed.jacobi_checked() ? parsed : parsed.validated();
    if (extend) validated = extend_central(validated);
    return {validated, serialize_salamon(validated), std::move(diagnostics)};
}

int finalize(Json& report, std::vector<std::string> diagnostics, const Output& out,
             const std::string& table_text = "") {
    report["diagnostics"] = diagnostics;
    if (out.format == "json") {
        std::cout << report.dump(2) << "\n";
    } else {
        Json display = report;
        std::cout << render_text(display);
        if (!table_text.empty()) std::cout << table_text;
    }
    return out.strict && !diagnostics.empty() ? 3 : 0;
}

Json algebra_summary(const LieAlgebra& validated) {
    Json r;
    r["dimension"] = validated.dimension();
    r["canonical"] = serialize_salamon(validated);
    r["jacobi"] = true;
    auto series = lower_central_series(validated);
    std::vector<int> dims;
    for (const auto& term : series) dims.push_back(term.dimension());
    r["nilpotent"] = dims.back() == 0;
    r["series_dims"] = dims;
    Subspace z = center(validated);
    r["center_dim"] = z.dimension();
    std::vector<std::string> basis;
    for (const auto& v : z.basis()) basis.push_back(to_literal(v));
    r["center"] = basis;
    return r;
}

int cmd_parse(const std::string& raw, const Output& out) {
    std::string text = resolve_arg(raw);
    Json report;
    report["schema"] = 1;
    report["command"] = "parse";
    report["input"]["algebra"] = text;
    report["input_digest"] = digest_inputs({"parse", text});
    std::vector<std::string> diagnostics;

    LieAlgebra parsed = parse_salamon(text);
    JacobiReport jr = check_jacobi(parsed);
    if (jr.ok) {
        report["result"] = algebra_summary(parsed.validated());
    } else {
        Json r;
        r["dimension"] = parsed.dimension();
        r["canonical"] = serialize_salamon(parsed);
        r["jacobi"] = false;
        r["jacobi_witness"]["coframe"] = jr.index;
        r["jacobi_witness"]["residual"] = to_literal(jr.residual);
        report["result"] = r;
        diagnostics.push_back("Jacobi identity fails at coframe " + std::to_string(jr.index));
    }
    return finalize(report, std::move(diagnostics), out);
}

int cmd_catalog(const std::optional<std::string>& name, const Output& out) {
    Json report;
    report["schema"] = 1;
    report["command"] = "catalog";
    std::vector<std::string> diagnostics;
    if (!name) {
        report["input"]["name"] = nullptr;
        report["input_digest"] = digest_inputs({"catalog"});
        Json rows = Json::array();
        for (const auto& entry_name : catalog_names()) {
            CatalogEntry entry = catalog(entry_name);
            Json row;
            row["name"] = entry.name;
            row["source"] = entry.source;
            row["flagged"] = entry.flagged;
            row["dimension"] = entry.algebra ? Json(entry.algebra->dimension()) : Json(nullptr);
            row["diagnostics"] = entry.diagnostics;
            rows.push_back(row);
            for (const auto& d : entry.diagnostics) diagnostics.push_back(entry.name + ": " + d);
        }
        report["result"]["entries"] = rows;
        return finalize(report, std::move(diagnostics), out);
    }
    CatalogEntry entry = catalog(*name);
    report["input"]["name"] = *name;
    report["input_digest"] = digest_inputs({"catalog", *name});
    Json r;
    r["name"] = entry.name;
    r["source"] = entry.source;
    r["flagged"] = entry.flagged;
    if (entry.algebra && entry.algebra->jacobi_checked()) {
        Json summary = algebra_summary(*entry.algebra);
        for (auto& [key, value] : summary.items()) r[key] = value;
    } else if (entry.algebra) {
        r["dimension"] = entry.algebra->dimension();
        r["canonical"] = serialize_salamon(*entry.algebra);
        r["jacobi"] = false;
    }
    r["notes"] = entry.diagnostics;
    report["result"] = r;
    for (const auto& d : entry.diagnostics) diagnostics.push_back(entry.name + ": " + d);
    return finalize(report, std::move(diagnostics), out);
}

/// Rows of the solution-space table: one row per column label with its
/// particular value and the homogeneous basis columns.
std::string solution_table_text(const Json& result) {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> header{"label", "particular"};
    std::size_t nbasis = result["basis"].size();
    for (std::size_t i = 0; i < nbasis; ++i) header.push_back("h" + std::to_string(i));
    rows.push_back(header);
    const auto& columns = result["columns"];
    for (std::size_t r = 0; r < columns.size(); ++r) {
        std::vector<std::string> row;
        row.push_back(columns[r].get<std::string>());
        row.push_back(result["particular"].is_null() ? "-" : result["particular"][r].get<std::string>());
        for (std::size_t i = 0; i < nbasis; ++i) row.push_back(result["basis"][i][r].get<std::string>());
        rows.push_back(std::move(row));
    }
    return render_table(rows);
}

Json solution_space_json(const SolutionSpace& space, const std::string& prefix) {
    Json r;
    r["consistent"] = space.consistent();
    r["rank"] = space.rank;
    r["nullity"] = space.nullity();
    std::vector<std::string> columns;
    for (const auto& label : space.column_labels) columns.push_back(prefix + "_" + label.digits());
    r["columns"] = columns;
    if (space.particular) {
        std::vector<std::string> p;
        for (const auto& v : *space.particular) p.push_back(to_string(v));
        r["particular"] = p;
    } else {
        r["particular"] = nullptr;
    }
    Json basis = Json::array();
    for (const auto& vec : space.basis) {
        std::vector<std::string> b;
        for (const auto& v : vec) b.push_back(to_string(v));
        basis.push_back(b);
    }
    r["basis"] = basis;
    return r;
}

int cmd_solve(const std::string& algebra_arg, const std::string& mode, const std::string& omega_arg,
              const std::string& theta_arg, bool extend, const Output& out) {
    std::string algebra_text = resolve_arg(algebra_arg);
    std::string omega_text = resolve_arg(omega_arg);
    std::string theta_text = resolve_arg(theta_arg);

    Json report;
    report["schema"] = 1;
    report["command"] = "solve";
    report["input"]["algebra"] = algebra_text;
    report["input"]["mode"] = mode;
    if (!omega_text.empty()) report["input"]["omega"] = omega_text;
    if (!theta_text.empty()) report["input"]["theta"] = theta_text;
    report["input"]["extend"] = extend;
    report["input_digest"] =
        digest_inputs({"solve", algebra_text, mode, omega_text, theta_text, extend ? "1" : "0"});
    std::vector<std::string> diagnostics;

    LoadedAlgebra loaded = load_validated_algebra(algebra_text, extend && mode == "phi");
    Json result;
    result["algebra_canonical"] = loaded.canonical;
    result["dimension"] = loaded.algebra.dimension();

    if (mode == "psi") {
        if (loaded.algebra.dimension() != 6) throw std::domain_error("psi mode requires a 6-dimensional algebra");
        if (omega_text.empty()) throw std::domain_error("psi mode requires --omega");
        ExteriorForm omega = parse_form(omega_text, 6);
        SolutionSpace space = solve(generic_psi_system(loaded.algebra, omega));
        Json table = solution_space_json(space, "psi");
        for (auto& [key, value] : table.items()) result[key] = value;
        if (!space.consistent())
            diagnostics.push_back("system inconsistent: no psi with d(psi) = 1/2 omega^2");
    } else if (mode == "phi") {
        if (loaded.algebra.dimension() != 7)
            throw std::domain_error("phi mode requires a 7-dimensional algebra (or --extend on a 6-dimensional one)");
        if (theta_text.empty()) throw std::domain_error("phi mode requires --theta");
        ExteriorForm theta = parse_form(theta_text, 7);
        ThetaPolicy policy = out.strict ? ThetaPolicy::require_nonzero : ThetaPolicy::permissive;
        SolutionSpace space = solve(generic_phi_system(loaded.algebra, theta, policy));
        Json table = solution_space_json(space, "phi");
        for (auto& [key, value] : table.items()) result[key] = value;
        NondegenerateClaim claim = theta_wedge_claim(space, theta);
        std::vector<bool> flags = claim.basis_nonzero;
        result["theta_wedge_nonzero"] = flags;
        result["claim"]["nondegenerate_solution_exists"] = claim.exists();
        result["claim"]["witness_column"] = claim.witness ? Json("h" + std::to_string(*claim.witness)) : Json(nullptr);
        if (!claim.exists())
            diagnostics.push_back("claim: no solution with theta ^ phi != 0 exists");
    } else {
        throw std::domain_error("mode must be psi or phi");
    }

    report["result"] = result;
    std::string table_text;
    if (out.format == "text") {
        table_text = "solution table:\n" + solution_table_text(result);
        if (result.contains("claim"))
            table_text += "non-degenerate L.C.CC solution exists: " +
                          std::string(result["claim"]["nondegenerate_solution_exists"].get<bool>() ? "yes" : "no") +
                          "\n";
        // the table carries these; keep the key/value section compact
        Json& r = report["result"];
        r.erase("columns");
        r.erase("particular");
        r.erase("basis");
        if (r.contains("theta_wedge_nonzero")) r.erase("theta_wedge_nonzero");
    }
    return finalize(report, std::move(diagnostics), out, table_text);
}

int cmd_verify(const std::string& algebra_arg, const std::string& phi_arg, const std::string& theta_arg,
               const std::string& x_arg, const std::string& omega_arg, bool extend, const Output& out) {
    std::string algebra_text = resolve_arg(algebra_arg);
    std::string phi_text = resolve_arg(phi_arg);
    std::string theta_text = resolve_arg(theta_arg);
    std::string x_text = resolve_arg(x_arg);
    std::string omega_text = resolve_arg(omega_arg);

    Json report;
    report["schema"] = 1;
    report["command"] = "verify";
    report["input"]["algebra"] = algebra_text;
    report["input"]["phi"] = phi_text;
    report["input"]["theta"] = theta_text;
    if (!x_text.empty()) report["input"]["x"] = x_text;
    if (!omega_text.empty()) report["input"]["omega"] = omega_text;
    report["input"]["extend"] = extend;
    report["input_digest"] =
        digest_inputs({"verify", algebra_text, phi_text, theta_text, x_text, omega_text, extend ? "1" : "0"});
    std::vector<std::string> diagnostics;

    LoadedAlgebra loaded = load_validated_algebra(algebra_text, extend);
    if (loaded.algebra.dimension() != 7)
        throw std::domain_error("verify requires a 7-dimensional algebra (or --extend on a 6-dimensional one)");
    ExteriorForm phi = parse_form(phi_text, 7);
    ExteriorForm theta = parse_form(theta_text, 7);

    Vector x = Vector::zero(7);
    if (!x_text.empty()) {
        x = parse_vector(x_text, 7);
    } else {
        // default X = theta-sharp under the orthonormal frame identification
        for (int i = 1; i <= 7; ++i) x[i] = theta.coefficient(IndexTuple{i});
    }
    Rational tx = evaluate(theta, x);
    if (tx == 0) throw std::domain_error("theta(X) = 0: cannot normalize the distinguished direction");
    if (tx != 1) x = (1 / tx) * x;

    G2Data data(loaded.algebra, phi, theta, x);
    std::optional<ExteriorForm> omega;
    if (!omega_text.empty()) {
        ExteriorForm om = parse_form(omega_text, 6);
        omega = om;
    }
    LccReport lcc = verify_lcc(data, omega);

    Json result;
    result["algebra_canonical"] = loaded.canonical;
    result["verdict"] = to_string(lcc.verdict);
    result["lambda"] = lcc.lambda ? Json(to_string(*lcc.lambda)) : Json(nullptr);
    result["phi_nonzero"] = lcc.phi_nonzero;
    result["theta_nonzero"] = lcc.theta_nonzero;
    result["theta_closed"] = lcc.theta_closed;
    result["theta_wedge_phi_nonzero"] = lcc.theta_wedge_phi_nonzero;
    result["x"] = to_literal(x);
    result["theta_of_x"] = to_string(evaluate(theta, x));
    if (lcc.decomposition) {
        const DecomposeResult& dec = *lcc.decomposition;
        Json d;
        d["psi_minus"] = to_literal(dec.psi_minus);
        d["sigma"] = to_literal(dec.sigma);
        d["iota_x_psi_minus_zero"] = dec.iota_x_psi_minus_zero;
        d["iota_x_sigma_zero"] = dec.iota_x_sigma_zero;
        if (dec.d_psi_minus_equals_sigma) d["d_psi_minus_equals_sigma"] = *dec.d_psi_minus_equals_sigma;
        if (dec.omega_proportionality) d["sigma_over_omega_squared"] = to_string(*dec.omega_proportionality);
        result["decomposition"] = d;
    }
    if (lcc.d_sigma_zero) result["d_sigma_zero"] = *lcc.d_sigma_zero;
    if (lcc.theta_wedge_phi_plus_sigma_zero)
        result["theta_wedge_phi_plus_sigma_zero"] = *lcc.theta_wedge_phi_plus_sigma_zero;
    Json q;
    q["available"] = lcc.quotient.available;
    q["note"] = lcc.quotient.note;
    if (lcc.quotient.available) {
        switch (lcc.quotient.half_flat.kind) {
            case HalfFlatKind::proportional: q["kind"] = "proportional"; break;
            case HalfFlatKind::degenerate: q["kind"] = "degenerate"; break;
            case HalfFlatKind::none: q["kind"] = "none"; break;
        }
        q["k"] = lcc.quotient.half_flat.k ? Json(to_string(*lcc.quotient.half_flat.k)) : Json(nullptr);
    }
    result["quotient_half_flat"] = q;
    report["result"] = result;

    if (lcc.verdict != LccVerdict::lccc) diagnostics.push_back("candidate is not L.C.CC: " + to_string(lcc.verdict));
    return finalize(report, std::move(diagnostics), out);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact exterior-calculus engine for locally conformally cocalibrated structures"};
    app.require_subcommand(1);

    Output out;
    app.add_option("--format", out.format, "output format")
        ->check(CLI::IsMember({"text", "json"}))
        ->envname("COCAL7_FORMAT");
    app.add_flag("--strict", out.strict, "nonzero exit on diagnostics");

    std::string parse_algebra;
    auto* parse_cmd = app.add_subcommand("parse", "parse and analyze structure equations");
    parse_cmd->add_option("algebra", parse_algebra, "structure-equation literal or @file")->required();

    std::string catalog_name;
    auto* catalog_cmd = app.add_subcommand("catalog", "list or inspect the built-in algebras");
    catalog_cmd->add_option("name", catalog_name, "catalog entry name");

    std::string solve_algebra, solve_mode, solve_omega, solve_theta;
    bool solve_extend = false;
    auto* solve_cmd = app.add_subcommand("solve", "solve a generic-coefficient linear system");
    solve_cmd->add_option("algebra", solve_algebra, "catalog name, structure-equation literal, or @file")->required();
    solve_cmd->add_option("--mode", solve_mode, "psi: d(psi)=1/2 omega^2; phi: d(phi)=theta^phi")
        ->required()
        ->check(CLI::IsMember({"psi", "phi"}));
    solve_cmd->add_option("--omega", solve_omega, "2-form literal (psi mode)");
    solve_cmd->add_option("--theta", solve_theta, "closed 1-form literal (phi mode)");
    solve_cmd->add_flag("--extend", solve_extend, "centrally extend a 6-dimensional algebra first (phi mode)");

    std::string verify_algebra, verify_phi, verify_theta, verify_x, verify_omega;
    bool verify_extend = false;
    auto* verify_cmd = app.add_subcommand("verify", "verify an L.C.CC candidate");
    verify_cmd->add_option("algebra", verify_algebra, "catalog name, structure-equation literal, or @file")->required();
    verify_cmd->add_option("--phi", verify_phi, "4-form literal")->required();
    verify_cmd->add_option("--theta", verify_theta, "1-form literal")->required();
    verify_cmd->add_option("--x", verify_x, "vector literal (default: theta-sharp)");
    verify_cmd->add_option("--omega", verify_omega, "2-form literal for the half-flat cross-check");
    verify_cmd->add_flag("--extend", verify_extend, "centrally extend a 6-dimensional algebra first");

    CLI11_PARSE(app, argc, argv);

    try {
        if (parse_cmd->parsed()) return cmd_parse(parse_algebra, out);
        if (catalog_cmd->parsed()) {
            std::optional<std::string> name;
            if (!catalog_name.empty()) name = catalog_name;
            return cmd_catalog(name, out);
        }
        if (solve_cmd->parsed())
            return cmd_solve(solve_algebra, solve_mode, solve_omega, solve_theta, solve_extend, out);
        if (verify_cmd->parsed())
            return cmd_verify(verify_algebra, verify_phi, verify_theta, verify_x, verify_omega, verify_extend, out);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
