#include <sstream>

#include "cdcalc/errors.hpp"
#include "cdcalc/opalgebra.hpp"
#include "parser_detail.hpp"

namespace cdcalc {

ScalarCDiffOp parse_scalar_operator(std::string_view text, const JetContext& ctx)
{
    return ScalarCDiffOp(detail::parse_terms(text, ctx, true));
}

CDiffOp parse_operator_matrix(std::string_view text, const JetContextPtr& ctx)
{
    std::vector<std::vector<ScalarCDiffOp>> rows;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        if (line.find_first_not_of(" \t\r") == std::string::npos)
            continue;
        std::vector<ScalarCDiffOp> row;
        std::size_t start = 0;
        while (true) {
            auto semi = line.find(';', start);
            auto piece = line.substr(start, semi == std::string::npos ? std::string::npos : semi - start);
            row.push_back(parse_scalar_operator(piece, *ctx));
            if (semi == std::string::npos)
                break;
            start = semi + 1;
        }
        if (!rows.empty() && row.size() != rows.front().size())
            throw ParseError("operator matrix rows have different lengths", 0);
        rows.push_back(std::move(row));
    }
    if (rows.empty())
        throw ParseError("empty operator matrix", 0);
    CDiffOp op(ctx, static_cast<int>(rows.size()), static_cast<int>(rows.front().size()));
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < rows[r].size(); ++c)
            op.entry(static_cast<int>(r), static_cast<int>(c)) = std::move(rows[r][c]);
    return op;
}

}  // namespace cdcalc
