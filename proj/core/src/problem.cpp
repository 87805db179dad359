#include "cdcalc/problem.hpp"

#include <regex>
#include <sstream>

#include "cdcalc/errors.hpp"
#include "cdcalc/expr_parser.hpp"

namespace cdcalc {

namespace {

struct Line {
    std::string text;
    std::size_t offset;
};

std::vector<Line> split_lines(std::string_view text)
{
    std::vector<Line> lines;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto nl = text.find('\n', pos);
        std::string line(text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos));
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        if (line.find_first_not_of(" \t\r") != std::string::npos)
            lines.push_back({line, pos});
        if (nl == std::string_view::npos)
            break;
        pos = nl + 1;
    }
    return lines;
}

std::vector<std::string> words(const std::string& s)
{
    std::istringstream in(s);
    std::vector<std::string> out;
    for (std::string w; in >> w;)
        out.push_back(w);
    return out;
}

// Position of the text following the keyword.
std::size_t after_keyword(const std::string& line, const std::string& kw)
{
    return line.find(kw) + kw.size();
}

template <class F>
auto reoffset(std::size_t base, F&& f) -> decltype(f())
{
    try {
        return f();
    } catch (const ParseError& e) {
        throw ParseError(e.detail(), base + e.offset());
    }
}

int parse_int(const std::string& s, std::size_t offset)
{
    try {
        std::size_t used = 0;
        int v = std::stoi(s, &used);
        if (used == s.size())
            return v;
    } catch (const std::exception&) {
    }
    throw ParseError("expected an integer, got '" + s + "'", offset);
}

}  // namespace

Problem parse_problem(std::string_view text)
{
    auto lines = split_lines(text);
    std::vector<std::string> independents, dependents, parameters;
    Problem pb;
    std::vector<std::optional<DiffPoly>> evolution;
    std::optional<std::vector<int>> metric;
    std::size_t metric_offset = 0;

    auto context = [&](std::size_t offset) -> const JetContextPtr& {
        if (!pb.free_context) {
            if (independents.empty())
                throw ParseError("'independent' must be declared first", offset);
            try {
                pb.free_context = make_context(JetContext(independents, dependents, parameters));
            } catch (const Error& e) {
                throw ParseError(e.what(), offset);
            }
            evolution.assign(dependents.size(), std::nullopt);
        }
        return pb.free_context;
    };

    for (std::size_t k = 0; k < lines.size(); ++k) {
        const auto& [line, offset] = lines[k];
        auto w = words(line);
        const std::string& kw = w.front();
        if (kw == "independent" || kw == "dependent" || kw == "parameter") {
            if (pb.free_context)
                throw ParseError("declarations must precede equations and operators", offset);
            auto& target = kw == "independent" ? independents : kw == "dependent" ? dependents : parameters;
            if (w.size() < 2)
                throw ParseError("'" + kw + "' needs at least one name", offset);
            target.insert(target.end(), w.begin() + 1, w.end());
        } else if (kw == "equation") {
            const auto& ctx = context(offset);
            std::size_t start = after_keyword(line, kw);
            pb.equations.push_back(reoffset(offset + start, [&] { return parse_expr(line.substr(start), *ctx); }));
        } else if (kw == "evolution") {
            const auto& ctx = context(offset);
            std::size_t start = after_keyword(line, kw);
            auto eq = line.find('=', start);
            if (eq == std::string::npos)
                throw ParseError("expected 'evolution <dependent> = <expr>'", offset);
            auto name = words(line.substr(start, eq - start));
            if (name.size() != 1)
                throw ParseError("expected one dependent variable before '='", offset + start);
            auto j = ctx->dependent_index(name[0]);
            if (!j)
                throw ParseError("unknown dependent variable '" + name[0] + "'", offset + start);
            if (evolution[*j])
                throw ParseError("duplicate evolution equation for '" + name[0] + "'", offset);
            evolution[*j] = reoffset(offset + eq + 1, [&] { return parse_expr(line.substr(eq + 1), *ctx); });
        } else if (kw == "metric") {
            static const std::regex re(R"(^\s*metric\s+diag\s*\(([^)]*)\)\s*$)");
            std::smatch m;
            if (!std::regex_match(line, m, re))
                throw ParseError("expected 'metric diag(e1, ..., en)'", offset);
            std::vector<int> d;
            std::string body = m[1].str();
            std::size_t pos = 0;
            while (pos <= body.size()) {
                auto comma = body.find(',', pos);
                std::string item = body.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
                auto b = item.find_first_not_of(" \t");
                auto e = item.find_last_not_of(" \t\r");
                item = b == std::string::npos ? "" : item.substr(b, e - b + 1);
                d.push_back(parse_int(item, offset + static_cast<std::size_t>(m.position(1)) + pos));
                if (comma == std::string::npos)
                    break;
                pos = comma + 1;
            }
            try {
                Metric check(d);
            } catch (const Error& e) {
                throw ParseError(e.what(), offset);
            }
            metric = d;
            metric_offset = offset;
        } else if (kw == "operator") {
            const auto& ctx = context(offset);
            if (w.size() == 3 && (w[1] == "dbar" || w[1] == "dstard")) {
                int q = parse_int(w[2], offset);
                try {
                    if (w[1] == "dbar") {
                        pb.operators.push_back({dbar_operator(ctx, q), 1});
                    } else {
                        if (!metric)
                            throw ParseError("'operator dstard' needs a preceding metric statement", offset);
                        pb.operators.push_back({dstard_operator(ctx, Metric(*metric), q), 2});
                    }
                } catch (const ParseError&) {
                    throw;
                } catch (const Error& e) {
                    throw ParseError(e.what(), offset);
                }
                continue;
            }
            // operator r0 -> r1 [order k]
            if (!((w.size() == 4 || w.size() == 6) && w[2] == "->" && (w.size() == 4 || w[4] == "order")))
                throw ParseError("expected 'operator <r0> -> <r1> [order <k>]' or a builtin", offset);
            int r0 = parse_int(w[1], offset);
            int r1 = parse_int(w[3], offset);
            if (r0 < 1 || r1 < 1)
                throw ParseError("operator ranks must be positive", offset);
            CDiffOp op(ctx, r1, r0);
            for (int r = 0; r < r1; ++r) {
                if (++k >= lines.size())
                    throw ParseError("operator block ends early; expected " + std::to_string(r1) + " rows",
                                     text.size());
                const auto& [row, row_offset] = lines[k];
                std::size_t start = 0;
                int c = 0;
                while (true) {
                    auto semi = row.find(';', start);
                    std::string piece = row.substr(start, semi == std::string::npos ? std::string::npos : semi - start);
                    if (c >= r0)
                        throw ParseError("operator row has more than " + std::to_string(r0) + " entries",
                                         row_offset + start);
                    op.entry(r, c++) =
                        reoffset(row_offset + start, [&] { return parse_scalar_operator(piece, *ctx); });
                    if (semi == std::string::npos)
                        break;
                    start = semi + 1;
                }
                if (c != r0)
                    throw ParseError("operator row has " + std::to_string(c) + " entries, expected " +
                                         std::to_string(r0),
                                     row_offset);
            }
            int order = op.order();
            if (w.size() == 6) {
                order = parse_int(w[5], offset);
                if (order < op.order())
                    throw ParseError("declared order is below the operator's order", offset);
            }
            pb.operators.push_back({std::move(op), order});
        } else {
            throw ParseError("unknown statement '" + kw + "'", offset);
        }
    }

    context(0);
    pb.context = pb.free_context;
    if (metric) {
        if (static_cast<int>(metric->size()) != pb.free_context->n())
            throw ParseError("metric has " + std::to_string(metric->size()) + " entries for " +
                                 std::to_string(pb.free_context->n()) + " independents",
                             metric_offset);
        pb.metric = Metric(*metric);
    }
    bool any = false, all = !evolution.empty();
    for (const auto& e : evolution) {
        any = any || e.has_value();
        all = all && e.has_value();
    }
    if (any) {
        if (!all)
            throw ParseError("evolution mode needs an equation for every dependent variable", 0);
        const JetContext& fc = *pb.free_context;
        int time = fc.independent_index("t").value_or(1);
        std::vector<DiffPoly> rhs;
        for (const auto& e : evolution)
            rhs.push_back(*e);
        try {
            pb.context = make_context(fc.with_evolution(rhs, time));
        } catch (const Error& e) {
            throw ParseError(e.what(), 0);
        }
        if (pb.equations.empty())
            for (int j = 0; j < fc.m(); ++j)
                pb.equations.push_back(DiffPoly::coord(CoordId::jet(j, MultiIndex{time})) - rhs[j]);
    }
    return pb;
}

}  // namespace cdcalc
