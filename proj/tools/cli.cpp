#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>

#include "cdcalc/compat.hpp"
#include "cdcalc/errors.hpp"
#include "cdcalc/jet_point.hpp"
#include "cdcalc/opalgebra.hpp"
#include "cdcalc/pform.hpp"
#include "cdcalc/problem.hpp"
#include "cdcalc/spencer.hpp"
#include "cdcalc/zcr.hpp"

namespace cdcalc::cli {

namespace {

using Json = nlohmann::ordered_json;

struct Options {
    std::string problem;
    std::string forms;
    std::string point;
    std::uint64_t seed = 0;
    int l_max = 2;
    int k1 = 1;
    int op_index = 1;
    int k = 2;
    int n = 2;
    int p = 1;
    std::string sign = "+";
    std::string metric;
    std::string xi;
    bool json = false;
};

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error("cannot read file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Problem load_problem(const Options& o)
{
    try {
        return parse_problem(read_file(o.problem));
    } catch (const ParseError& e) {
        throw Error(o.problem + ": " + e.what());
    }
}

struct Selected {
    std::string name;
    CDiffOp op;
    int order;
};

// First declared operator (or --op N); ℓ_F of the equations otherwise.
Selected select_operator(const Problem& pb, const Options& o)
{
    if (!pb.operators.empty()) {
        if (o.op_index < 1 || o.op_index > static_cast<int>(pb.operators.size()))
            throw Error("--op " + std::to_string(o.op_index) + " out of range (problem declares " +
                        std::to_string(pb.operators.size()) + " operators)");
        const auto& d = pb.operators[static_cast<std::size_t>(o.op_index - 1)];
        return {"op" + std::to_string(o.op_index), d.op, d.order};
    }
    if (pb.equations.empty())
        throw Error("problem declares neither equations nor operators");
    if (o.op_index != 1)
        throw Error("--op " + std::to_string(o.op_index) + " given but the problem declares no operators");
    CDiffOp l = linearize(pb.free_context, pb.equations);
    int order = l.order();
    return {"l_F", std::move(l), order};
}

std::vector<JetPoint> sample_points(const JetContextPtr& ctx, int bound, const Options& o)
{
    if (!o.point.empty()) {
        JetPoint pt = parse_point(read_file(o.point), ctx);
        pt.require_order(bound);
        return {pt};
    }
    return generic_points(ctx, bound, o.seed);
}

std::string point_label(const Options& o)
{
    return o.point.empty() ? "generic (seed " + std::to_string(o.seed) + ", 3 samples)" : o.point;
}

std::vector<std::string> operator_rows(const CDiffOp& op)
{
    std::vector<std::string> rows;
    std::istringstream in(to_string(op));
    for (std::string line; std::getline(in, line);)
        rows.push_back(line);
    return rows;
}

void print_operator(std::ostream& out, const std::string& name, const CDiffOp& op)
{
    auto rows = operator_rows(op);
    if (rows.size() == 1) {
        out << name << " = " << rows.front() << '\n';
        return;
    }
    out << name << " =\n";
    for (const auto& r : rows)
        out << "  " << r << '\n';
}

Json operator_json(const CDiffOp& op)
{
    Json j = Json::object();
    j["rows"] = op.rows();
    j["cols"] = op.cols();
    j["order"] = op.order();
    j["entries"] = operator_rows(op);
    return j;
}

void emit_json(std::ostream& out, const Json& j)
{
    out << j.dump(2) << '\n';
}

void emit_warnings(std::ostream& out, const std::vector<std::string>& warnings)
{
    for (const auto& w : warnings)
        out << "warning: " << w << '\n';
}

std::vector<std::string> xi_names(const JetContext& ctx)
{
    std::vector<std::string> names;
    for (const auto& x : ctx.independents())
        names.push_back("xi_" + x);
    return names;
}

std::vector<Rational> parse_rational_list(const std::string& text, const std::string& what)
{
    std::vector<Rational> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto comma = text.find(',', pos);
        std::string item = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        try {
            out.push_back(parse_rational(item));
        } catch (const Error&) {
            throw Error("bad " + what + " entry '" + item + "'");
        }
        if (comma == std::string::npos)
            break;
        pos = comma + 1;
    }
    return out;
}

// ---------------------------------------------------------------------------

int cmd_linearize(const Options& o, std::ostream& out)
{
    Problem pb = load_problem(o);
    if (pb.equations.empty())
        throw Error("problem declares no equations");
    CDiffOp l = linearize(pb.free_context, pb.equations);
    if (o.json) {
        Json j;
        j["l_F"] = operator_json(l);
        emit_json(out, j);
    } else {
        print_operator(out, "l_F", l);
    }
    return 0;
}

int cmd_adjoint(const Options& o, std::ostream& out)
{
    Problem pb = load_problem(o);
    Selected s = select_operator(pb, o);
    CDiffOp adj = adjoint(s.op);
    if (o.json) {
        Json j;
        j[s.name] = operator_json(s.op);
        j[s.name + "*"] = operator_json(adj);
        emit_json(out, j);
    } else {
        print_operator(out, s.name, s.op);
        print_operator(out, s.name + "*", adj);
    }
    return 0;
}

int cmd_symbol(const Options& o, std::ostream& out)
{
    Problem pb = load_problem(o);
    Selected s = select_operator(pb, o);
    auto points = sample_points(s.op.context_ptr(), required_point_order(s.op, 0), o);
    SymbolMatrix sym = symbol(s.op, points.front());
    auto names = xi_names(s.op.context());
    std::vector<std::string> rows;
    for (int r = 0; r < sym.rows; ++r) {
        std::string line;
        for (int c = 0; c < sym.cols; ++c) {
            if (c > 0)
                line += " ; ";
            line += sym.entry(r, c).to_string(names);
        }
        rows.push_back(line);
    }
    if (o.json) {
        Json j;
        j["operator"] = s.name;
        j["degree"] = sym.degree;
        j["point"] = point_label(o);
        j["symbol"] = rows;
        emit_json(out, j);
        return 0;
    }
    out << "operator: " << s.name << '\n';
    out << "degree: " << sym.degree << '\n';
    out << "point: " << point_label(o) << (o.point.empty() ? ", sample #0" : "") << '\n';
    out << "symbol:\n";
    for (const auto& r : rows)
        out << "  " << r << '\n';
    return 0;
}

SpencerReport spencer_for(const Selected& s, const Options& o)
{
    auto points = sample_points(s.op.context_ptr(), spencer_point_order(s.op), o);
    return spencer_cohomology(s.op, o.l_max, points);
}

int cmd_spencer(const Options& o, std::ostream& out)
{
    Problem pb = load_problem(o);
    Selected s = select_operator(pb, o);
    SpencerReport rep = spencer_for(s, o);
    auto fail = rep.first_failure();
    if (o.json) {
        Json j;
        j["operator"] = s.name;
        j["order"] = rep.order;
        j["l_max"] = rep.l_max;
        j["point"] = point_label(o);
        for (std::size_t l = 0; l < rep.dims.size(); ++l)
            for (std::size_t i = 0; i < rep.dims[l].size(); ++i)
                j["dims." + std::to_string(l) + "." + std::to_string(i)] = rep.dims[l][i];
        if (fail)
            j["involutive_up_to"] = nullptr;
        else
            j["involutive_up_to"] = rep.l_max;
        j["warnings"] = rep.warnings;
        emit_json(out, j);
        return 0;
    }
    out << "operator: " << s.name << '\n';
    out << "order: " << rep.order << '\n';
    out << "point: " << point_label(o) << '\n';
    emit_warnings(out, rep.warnings);
    out << "dim H^{k+l,i}:\n";
    out << "  l\\i";
    for (int i = 0; i <= rep.n; ++i)
        out << std::setw(5) << i;
    out << '\n';
    for (std::size_t l = 0; l < rep.dims.size(); ++l) {
        out << "  " << std::setw(3) << std::left << l << std::right;
        for (auto d : rep.dims[l])
            out << std::setw(5) << d;
        out << '\n';
    }
    if (fail)
        out << "involutive_up_to: none (first nonzero at l=" << fail->first << ", i=" << fail->second << ")\n";
    else
        out << "involutive_up_to: " << rep.l_max << '\n';
    return 0;
}

int cmd_involutive(const Options& o, std::ostream& out)
{
    Problem pb = load_problem(o);
    Selected s = select_operator(pb, o);
    SpencerReport rep = spencer_for(s, o);
    InvolutivityResult res = is_involutive(rep);
    if (o.json) {
        Json j;
        j["operator"] = s.name;
        j["involutive"] = res.involutive;
        j["tested_up_to"] = res.tested_up_to;
        if (res.failure)
            j["failure"] = {{"l", res.failure->first}, {"i", res.failure->second}};
        j["warnings"] = rep.warnings;
        emit_json(out, j);
        return 0;
    }
    out << "operator: " << s.name << '\n';
    emit_warnings(out, rep.warnings);
    if (res.involutive)
        out << "involutive: true (tested l <= " << res.tested_up_to << ")\n";
    else
        out << "involutive: false (first failure at l=" << res.failure->first << ", i=" << res.failure->second
            << ")\n";
    return 0;
}

std::string join_sizes(const std::vector<std::size_t>& v, const char* sep)
{
    std::string s;
    for (std::size_t k = 0; k < v.size(); ++k) {
        if (k > 0)
            s += sep;
        s += std::to_string(v[k]);
    }
    return s;
}

int cmd_exactness(const Options& o, std::ostream& out)
{
    Problem pb = load_problem(o);
    if (pb.operators.empty())
        throw Error("exactness needs a complex: declare operator blocks in the problem file");
    std::vector<CDiffOp> ops;
    std::vector<int> orders;
    for (const auto& d : pb.operators) {
        ops.push_back(d.op);
        orders.push_back(d.order);
    }
    OperatorComplex complex(std::move(ops), std::move(orders));
    auto points = sample_points(pb.free_context, exactness_point_order(complex, o.l_max), o);
    ExactnessReport rep = check_formal_exactness(complex, o.l_max, points);
    if (o.json) {
        Json j;
        j["l_max"] = rep.l_max;
        j["point"] = point_label(o);
        Json entries = Json::array();
        for (const auto& e : rep.entries)
            entries.push_back({{"position", e.position},
                               {"kind", to_string(e.kind)},
                               {"l", e.l},
                               {"dims", e.dims},
                               {"ranks", e.ranks},
                               {"defect", e.defect},
                               {"exact", e.exact()}});
        j["entries"] = entries;
        j["formally_exact"] = rep.exact();
        j["warnings"] = rep.warnings;
        emit_json(out, j);
        return 0;
    }
    out << "complex: " << complex.length() << " operator(s), ranks " << [&] {
        std::string s;
        auto r = complex.module_ranks();
        for (std::size_t k = 0; k < r.size(); ++k)
            s += (k ? " -> " : "") + std::to_string(r[k]);
        return s;
    }() << '\n';
    out << "point: " << point_label(o) << '\n';
    emit_warnings(out, rep.warnings);
    for (const auto& e : rep.entries) {
        out << "  P" << e.position << " " << std::setw(8) << std::left << to_string(e.kind) << std::right
            << " l=" << e.l << "  dims " << join_sizes(e.dims, "->") << "  ranks " << join_sizes(e.ranks, ",");
        if (e.kind == PositionKind::source)
            out << "  kernel " << e.defect << '\n';
        else
            out << "  defect " << e.defect << (e.exact() ? "  exact" : "  NOT exact") << '\n';
    }
    out << "formally_exact: " << (rep.exact() ? "true" : "false") << " (tested l <= " << rep.l_max << ")\n";
    return 0;
}

int cmd_coker(const Options& o, std::ostream& out)
{
    Problem pb = load_problem(o);
    Selected s = select_operator(pb, o);
    auto points = sample_points(s.op.context_ptr(), required_point_order(s.op, o.k1), o);
    std::vector<std::size_t> values;
    for (const auto& pt : points)
        values.push_back(cokernel_rank(s.op, o.k1, pt));
    std::size_t best = *std::min_element(values.begin(), values.end());
    std::vector<std::string> warnings;
    if (std::adjacent_find(values.begin(), values.end(), std::not_equal_to<>()) != values.end())
        warnings.push_back("cokernel ranks differ across sample points; reporting the generic (minimal) value");
    if (o.json) {
        Json j;
        j["operator"] = s.name;
        j["k1"] = o.k1;
        j["cokernel_rank"] = best;
        j["warnings"] = warnings;
        emit_json(out, j);
        return 0;
    }
    out << "operator: " << s.name << '\n';
    out << "k1: " << o.k1 << '\n';
    emit_warnings(out, warnings);
    out << "cokernel_rank: " << best << '\n';
    return 0;
}

int cmd_kline(const Options& o, std::ostream& out)
{
    KLineReport r = kline_report(o.k, o.n);
    if (o.json) {
        Json j;
        j["k"] = r.k;
        j["n"] = r.n;
        j["e1_q_max"] = r.e1_q_max;
        j["cohomology_from"] = r.cohomology_from;
        j["lines"] = r.lines;
        emit_json(out, j);
        return 0;
    }
    for (const auto& l : r.lines)
        out << l << '\n';
    return 0;
}

int cmd_zcr(const Options& o, std::ostream& out)
{
    Problem pb = load_problem(o);
    MatrixForm omega = [&] {
        try {
            return parse_matrix_form(read_file(o.forms), *pb.context);
        } catch (const ParseError& e) {
            throw Error(o.forms + ": " + e.what());
        }
    }();
    MatrixForm res = mc_residual(*pb.context, omega);
    const JetContext& ctx = *pb.context;
    std::vector<std::string> nonzero;
    for (const auto& [I, m] : res.coefficients()) {
        std::string where;
        for (std::size_t k = 0; k < I.size(); ++k)
            where += (k ? "^d" : "d") + ctx.independents()[I[k]];
        for (int r = 0; r < m.size(); ++r)
            for (int c = 0; c < m.size(); ++c)
                if (!m(r, c).is_zero())
                    nonzero.push_back(where + " (" + std::to_string(r + 1) + "," + std::to_string(c + 1) +
                                      "): " + to_string(m(r, c), ctx));
    }
    if (o.json) {
        Json j;
        j["mode"] = ctx.is_evolution() ? "evolution" : "free";
        j["size"] = omega.size();
        j["residual_zero"] = res.is_zero();
        j["nonzero_entries"] = nonzero;
        emit_json(out, j);
        return 0;
    }
    out << "mode: " << (ctx.is_evolution() ? "evolution" : "free") << '\n';
    out << "size: " << omega.size() << '\n';
    if (res.is_zero()) {
        out << "residual: 0 (zero-curvature representation verified)\n";
    } else {
        out << "residual: nonzero\n";
        for (const auto& line : nonzero)
            out << "  " << line << '\n';
    }
    return 0;
}

int cmd_two_line(const Options& o, std::ostream& out)
{
    if (o.sign != "+" && o.sign != "-")
        throw CLI::ValidationError("--sign", "must be + or -");
    TwoLineResult r = two_line_polynomial(o.k, o.p, o.sign == "+" ? 1 : -1);
    std::vector<std::string> names;
    for (int i = 1; i <= o.p; ++i)
        names.push_back("theta" + std::to_string(i));
    std::string poly = r.polynomial.to_string(names);
    if (o.json) {
        Json j;
        j["k"] = o.k;
        j["p"] = o.p;
        j["sign"] = o.sign;
        j["nonzero"] = r.nonzero;
        j["polynomial"] = poly;
        emit_json(out, j);
        return 0;
    }
    out << "q" << o.sign << " = " << poly << '\n';
    out << "nonzero: " << (r.nonzero ? "true" : "false") << '\n';
    return 0;
}

Metric metric_option(const Options& o)
{
    if (o.metric.empty())
        return Metric::euclidean(o.n);
    return Metric::diagonal(parse_rational_list(o.metric, "metric"));
}

int cmd_pform_epi(const Options& o, std::ostream& out)
{
    Metric g = metric_option(o);
    std::vector<Rational> xi;
    if (o.xi.empty()) {
        xi.assign(static_cast<std::size_t>(o.n), Rational(0));
        if (o.n > 0)
            xi[0] = 1;
    } else {
        xi = parse_rational_list(o.xi, "xi");
    }
    EpiResult r = epi_check(o.n, o.p, g, xi);
    if (o.json) {
        Json j;
        j["n"] = o.n;
        j["p"] = o.p;
        j["rank"] = r.rank;
        j["dim"] = r.dim;
        j["surjective"] = r.surjective;
        emit_json(out, j);
        return 0;
    }
    out << "n: " << o.n << '\n' << "p: " << o.p << '\n';
    out << "rank: " << r.rank << '\n' << "dim: " << r.dim << '\n';
    out << "surjective: " << (r.surjective ? "true" : "false") << '\n';
    return 0;
}

int cmd_pform_table(const Options& o, std::ostream& out)
{
    E1Table t = e1_table(o.n, o.p);
    if (o.json) {
        Json j;
        j["n"] = t.n;
        j["p"] = t.p;
        Json entries = Json::array();
        for (const auto& [iq, d] : t.dims)
            entries.push_back({iq.first, iq.second, d});
        j["entries"] = entries;
        emit_json(out, j);
        return 0;
    }
    out << "n: " << t.n << '\n' << "p: " << t.p << '\n';
    out << "(i, q, dim):\n";
    for (const auto& [iq, d] : t.dims)
        out << "  (" << iq.first << ", " << iq.second << ", " << d << ")\n";
    return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Exact C-differential calculus on jet spaces", "cdcalc"};
    app.require_subcommand(1, 1);
    Options o;

    auto add_point = [&o](CLI::App* sub) {
        auto* pt = sub->add_option("--point", o.point, "point file with 'coord = rational' lines");
        sub->add_option("--seed", o.seed, "seed for the generic-point sampler")->excludes(pt);
    };
    auto add_problem = [&o](CLI::App* sub) {
        sub->add_option("problem", o.problem, "problem file")->required();
        sub->add_option("--op", o.op_index, "1-based index of the declared operator to use");
    };

    std::vector<std::pair<CLI::App*, int (*)(const Options&, std::ostream&)>> table;
    auto sub = [&](const char* name, const char* help, int (*fn)(const Options&, std::ostream&)) {
        CLI::App* s = app.add_subcommand(name, help);
        s->add_flag("--json", o.json, "structured output");
        table.emplace_back(s, fn);
        return s;
    };

    add_problem(sub("linearize", "universal linearization of the equations", cmd_linearize));
    add_problem(sub("adjoint", "formal adjoint of an operator", cmd_adjoint));
    {
        auto* s = sub("symbol", "principal symbol at a point", cmd_symbol);
        add_problem(s);
        add_point(s);
    }
    for (auto [name, help, fn] : {std::tuple{"spencer", "Spencer delta-cohomology table", cmd_spencer},
                                  std::tuple{"involutive", "involutivity up to l-max", cmd_involutive}}) {
        auto* s = sub(name, help, fn);
        add_problem(s);
        add_point(s);
        s->add_option("--l-max", o.l_max, "largest prolongation")->check(CLI::NonNegativeNumber);
    }
    {
        auto* s = sub("exactness", "formal exactness of the declared complex", cmd_exactness);
        s->add_option("problem", o.problem, "problem file")->required();
        add_point(s);
        s->add_option("--l-max", o.l_max, "largest prolongation")->check(CLI::NonNegativeNumber);
    }
    {
        auto* s = sub("coker", "cokernel rank of the prolonged fiber map", cmd_coker);
        add_problem(s);
        add_point(s);
        s->add_option("--k1", o.k1, "prolongation order k1")->check(CLI::PositiveNumber);
    }
    {
        auto* s = sub("kline", "k-line vanishing ranges", cmd_kline);
        s->add_option("--k", o.k, "complex length")->required();
        s->add_option("--n", o.n, "number of independent variables")->required();
    }
    {
        auto* s = sub("zcr", "Maurer-Cartan residual of a matrix 1-form", cmd_zcr);
        s->add_option("problem", o.problem, "problem file")->required();
        s->add_option("--forms", o.forms, "matrix-form file")->required();
    }
    {
        auto* s = sub("two-line", "nondegeneracy of the two-line polynomial", cmd_two_line);
        s->add_option("--k", o.k, "operator order")->required();
        s->add_option("--p", o.p, "Cartan degree")->required();
        s->add_option("--sign", o.sign, "+ or -")->check(CLI::IsMember({"+", "-"}));
    }
    {
        auto* s = sub("pform-epi", "symbol epimorphism check for p-form theories", cmd_pform_epi);
        s->add_option("--n", o.n, "dimension")->required();
        s->add_option("--p", o.p, "form degree")->required();
        s->add_option("--metric", o.metric, "diagonal entries, e.g. -1,1,1,1 (default Euclidean)");
        s->add_option("--xi", o.xi, "covector, e.g. 2,1,0,0 (default 1,0,...,0)");
    }
    {
        auto* s = sub("pform-table", "E1 dimension table for p-form theories", cmd_pform_table);
        s->add_option("--n", o.n, "dimension")->required();
        s->add_option("--p", o.p, "form degree")->required();
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0)
            return app.exit(e, out, err);
        err << "usage error: " << e.what() << '\n';
        return 2;
    }

    try {
        for (auto& [s, fn] : table)
            if (s->parsed())
                return fn(o, out);
    } catch (const CLI::Error& e) {
        err << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}

}  // namespace cdcalc::cli
