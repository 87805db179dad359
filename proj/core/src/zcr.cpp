#include "cdcalc/zcr.hpp"

#include <algorithm>
#include <sstream>

#include "cdcalc/errors.hpp"
#include "cdcalc/expr_parser.hpp"
#include "cdcalc/jetcalc.hpp"

namespace cdcalc {

PolyMatrix PolyMatrix::identity(int size)
{
    PolyMatrix m(size);
    for (int i = 0; i < size; ++i)
        m(i, i) = DiffPoly(1);
    return m;
}

bool PolyMatrix::is_zero() const
{
    return std::all_of(data_.begin(), data_.end(), [](const DiffPoly& f) { return f.is_zero(); });
}

PolyMatrix& PolyMatrix::operator+=(const PolyMatrix& o)
{
    if (o.size_ != size_)
        throw DimensionError("matrix size mismatch");
    for (std::size_t k = 0; k < data_.size(); ++k)
        data_[k] += o.data_[k];
    return *this;
}

PolyMatrix& PolyMatrix::operator-=(const PolyMatrix& o)
{
    if (o.size_ != size_)
        throw DimensionError("matrix size mismatch");
    for (std::size_t k = 0; k < data_.size(); ++k)
        data_[k] -= o.data_[k];
    return *this;
}

PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b)
{
    if (a.size_ != b.size_)
        throw DimensionError("matrix size mismatch");
    PolyMatrix out(a.size_);
    for (int i = 0; i < a.size_; ++i)
        for (int k = 0; k < a.size_; ++k) {
            if (a(i, k).is_zero())
                continue;
            for (int j = 0; j < a.size_; ++j)
                if (!b(k, j).is_zero())
                    out(i, j) += a(i, k) * b(k, j);
        }
    return out;
}

PolyMatrix PolyMatrix::scaled(const DiffPoly& f) const
{
    PolyMatrix out = *this;
    for (auto& e : out.data_)
        e = e * f;
    return out;
}

PolyMatrix commutator(const PolyMatrix& a, const PolyMatrix& b)
{
    return a * b - b * a;
}

PolyMatrix total_derivative(const JetContext& ctx, int i, const PolyMatrix& a)
{
    PolyMatrix out(a.size());
    for (int r = 0; r < a.size(); ++r)
        for (int c = 0; c < a.size(); ++c)
            out(r, c) = total_derivative(ctx, i, a(r, c));
    return out;
}

MatrixForm::MatrixForm(int n, int degree, int size) : n_(n), degree_(degree), size_(size)
{
    if (n < 1 || degree < 0 || degree > n)
        throw DimensionError("matrix form degree out of range");
    if (size < 1)
        throw DimensionError("matrix forms need size >= 1");
}

MatrixForm MatrixForm::one_form(const std::vector<PolyMatrix>& components)
{
    if (components.empty())
        throw DimensionError("one_form needs one matrix per independent variable");
    MatrixForm f(static_cast<int>(components.size()), 1, components.front().size());
    for (std::size_t i = 0; i < components.size(); ++i)
        f.set({static_cast<int>(i)}, components[i]);
    return f;
}

PolyMatrix MatrixForm::coefficient(const Tuple& increasing) const
{
    auto it = coeffs_.find(increasing);
    return it == coeffs_.end() ? PolyMatrix(size_) : it->second;
}

void MatrixForm::set(const Tuple& increasing, PolyMatrix a)
{
    if (a.size() != size_)
        throw DimensionError("matrix size mismatch in matrix form");
    if (static_cast<int>(increasing.size()) != degree_ ||
        !std::is_sorted(increasing.begin(), increasing.end(), std::less_equal<>()) ||
        std::adjacent_find(increasing.begin(), increasing.end()) != increasing.end() ||
        (!increasing.empty() && (increasing.front() < 0 || increasing.back() >= n_)))
        throw DimensionError("matrix form index tuple must be strictly increasing of the form degree");
    if (a.is_zero())
        coeffs_.erase(increasing);
    else
        coeffs_[increasing] = std::move(a);
}

MatrixForm MatrixForm::scaled(const DiffPoly& f) const
{
    MatrixForm out(n_, degree_, size_);
    for (const auto& [I, a] : coeffs_)
        out.set(I, a.scaled(f));
    return out;
}

MatrixForm& MatrixForm::operator+=(const MatrixForm& o)
{
    if (o.n_ != n_ || o.degree_ != degree_ || o.size_ != size_)
        throw DimensionError("matrix form shape mismatch");
    for (const auto& [I, a] : o.coeffs_)
        set(I, coefficient(I) + a);
    return *this;
}

McParts mc_residual_parts(const JetContext& ctx, const MatrixForm& omega)
{
    if (omega.degree() != 1)
        throw DimensionError("the Maurer-Cartan residual takes a 1-form");
    if (omega.n() != ctx.n())
        throw DimensionError("matrix form and jet space disagree on the number of independents");
    const int n = ctx.n();
    const int d = omega.size();
    if (n < 2)
        return {MatrixForm(n, n, d), MatrixForm(n, n, d)};
    McParts parts{MatrixForm(n, 2, d), MatrixForm(n, 2, d)};
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            PolyMatrix ai = omega.coefficient({i});
            PolyMatrix aj = omega.coefficient({j});
            parts.dbar_part.set({i, j}, total_derivative(ctx, i, aj) - total_derivative(ctx, j, ai));
            parts.bracket_part.set({i, j}, commutator(ai, aj));
        }
    return parts;
}

MatrixForm mc_residual(const JetContext& ctx, const MatrixForm& omega)
{
    McParts parts = mc_residual_parts(ctx, omega);
    return parts.dbar_part + parts.bracket_part;
}

CDiffOp ad_operator(const JetContextPtr& ctx, const PolyMatrix& a)
{
    const int d = a.size();
    CDiffOp op(ctx, d * d, d * d);
    // (AX − XA)_{rc} = Σ_k A_{rk} X_{kc} − X_{rk} A_{kc}
    for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c)
            for (int k = 0; k < d; ++k) {
                if (!a(r, k).is_zero())
                    op.entry(r * d + c, k * d + c).add({}, a(r, k));
                if (!a(k, c).is_zero())
                    op.entry(r * d + c, r * d + k).add({}, -a(k, c));
            }
    return op;
}

CDiffOp covering_substitute(const CDiffOp& op, const MatrixForm& omega)
{
    if (op.rows() != 1 || op.cols() != 1)
        throw DimensionError("covering substitution takes a scalar operator");
    if (omega.degree() != 1 || omega.n() != op.context().n())
        throw DimensionError("covering substitution needs a 1-form over the operator's independents");
    const JetContextPtr& ctx = op.context_ptr();
    const int n = ctx->n();
    const int d = omega.size();
    const int D = d * d;

    std::vector<CDiffOp> nabla;
    for (int i = 0; i < n; ++i) {
        CDiffOp di(ctx, D, D);
        for (int k = 0; k < D; ++k)
            di.entry(k, k) = ScalarCDiffOp::derivative(MultiIndex{i});
        nabla.push_back(di + ad_operator(ctx, omega.coefficient({i})));
    }

    // ∇_σ = ∇_{i₁} ∘ … ∘ ∇_{i_r}, built by prefix
    std::map<MultiIndex, CDiffOp> cache;
    cache.emplace(MultiIndex{}, CDiffOp::identity(ctx, D));
    auto nabla_of = [&](const MultiIndex& sigma) -> const CDiffOp& {
        for (std::size_t len = 1; len <= sigma.order(); ++len) {
            auto e = sigma.entries();
            MultiIndex prefix(std::vector<int>(e.begin(), e.begin() + static_cast<long>(len)));
            if (cache.count(prefix))
                continue;
            MultiIndex parent(std::vector<int>(e.begin(), e.begin() + static_cast<long>(len) - 1));
            cache.emplace(prefix, compose(cache.at(parent), nabla[e[len - 1]]));
        }
        return cache.at(sigma);
    };

    CDiffOp out(ctx, D, D);
    for (const auto& [sigma, a] : op.entry(0, 0).terms()) {
        const CDiffOp& ns = nabla_of(sigma);
        CDiffOp term(ctx, D, D);
        for (int r = 0; r < D; ++r)
            for (int c = 0; c < D; ++c)
                term.entry(r, c) = ns.entry(r, c).left_multiplied(a);
        out += term;
    }
    return out;
}

namespace {

std::string trim(const std::string& s)
{
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return {};
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

}  // namespace

MatrixForm parse_matrix_form(std::string_view text, const JetContext& ctx)
{
    std::vector<std::string> lines;
    std::vector<std::size_t> offsets;
    {
        std::size_t pos = 0;
        while (pos <= text.size()) {
            auto nl = text.find('\n', pos);
            std::string line(text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos));
            if (auto hash = line.find('#'); hash != std::string::npos)
                line.erase(hash);
            if (!trim(line).empty()) {
                lines.push_back(line);
                offsets.push_back(pos);
            }
            if (nl == std::string_view::npos)
                break;
            pos = nl + 1;
        }
    }

    std::map<int, std::vector<std::vector<DiffPoly>>> blocks;
    std::size_t k = 0;
    int d = -1;
    while (k < lines.size()) {
        std::istringstream head(lines[k]);
        std::string kw, var, extra;
        head >> kw >> var;
        if (kw != "A" || var.empty() || (head >> extra))
            throw ParseError("expected 'A <independent>' header", offsets[k]);
        auto idx = ctx.independent_index(var);
        if (!idx)
            throw ParseError("unknown independent variable '" + var + "'", offsets[k]);
        if (blocks.count(*idx))
            throw ParseError("duplicate matrix for '" + var + "'", offsets[k]);
        const std::size_t header = k++;
        std::vector<std::vector<DiffPoly>> rows;
        while (k < lines.size() && trim(lines[k]).rfind("A ", 0) != 0) {
            std::vector<DiffPoly> row;
            std::size_t start = 0;
            const std::string& line = lines[k];
            while (true) {
                auto semi = line.find(';', start);
                std::string piece = line.substr(start, semi == std::string::npos ? std::string::npos : semi - start);
                try {
                    row.push_back(parse_expr(piece, ctx));
                } catch (const ParseError& e) {
                    throw ParseError(e.detail(), offsets[k] + start + e.offset());
                }
                if (semi == std::string::npos)
                    break;
                start = semi + 1;
            }
            rows.push_back(std::move(row));
            ++k;
        }
        if (rows.empty())
            throw ParseError("matrix block without rows", offsets[header]);
        if (d < 0)
            d = static_cast<int>(rows.size());
        if (static_cast<int>(rows.size()) != d)
            throw ParseError("matrix blocks have different sizes", offsets[header]);
        for (const auto& row : rows)
            if (static_cast<int>(row.size()) != d)
                throw ParseError("matrix rows must have " + std::to_string(d) + " entries", offsets[header]);
        blocks.emplace(*idx, std::move(rows));
    }
    if (blocks.empty())
        throw ParseError("no matrices in form file", 0);

    MatrixForm omega(ctx.n(), 1, d);
    for (auto& [i, rows] : blocks) {
        PolyMatrix m(d);
        for (int r = 0; r < d; ++r)
            for (int c = 0; c < d; ++c)
                m(r, c) = rows[r][c];
        omega.set({i}, std::move(m));
    }
    return omega;
}

}  // namespace cdcalc
