#include "cdcalc/jet_context.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "cdcalc/errors.hpp"

namespace cdcalc {

namespace {

bool valid_identifier(const std::string& s)
{
    if (s.empty() || !std::isalpha(static_cast<unsigned char>(s.front())))
        return false;
    return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)); });
}

std::optional<int> find(const std::vector<std::string>& v, std::string_view name)
{
    auto it = std::find(v.begin(), v.end(), name);
    if (it == v.end())
        return std::nullopt;
    return static_cast<int>(it - v.begin());
}

}  // namespace

JetContext::JetContext(std::vector<std::string> independents, std::vector<std::string> dependents,
                       std::vector<std::string> parameters)
    : independents_(std::move(independents)), dependents_(std::move(dependents)), parameters_(std::move(parameters))
{
    if (independents_.empty())
        throw PreconditionError("at least one independent variable is required");
    std::set<std::string> seen;
    for (const auto* group : {&independents_, &dependents_, &parameters_})
        for (const auto& name : *group) {
            if (!valid_identifier(name))
                throw PreconditionError("invalid identifier '" + name + "'");
            if (name == "D")
                throw PreconditionError("'D' is reserved for total derivatives");
            if (!seen.insert(name).second)
                throw PreconditionError("duplicate name '" + name + "'");
        }
}

std::optional<int> JetContext::independent_index(std::string_view name) const { return find(independents_, name); }
std::optional<int> JetContext::dependent_index(std::string_view name) const { return find(dependents_, name); }
std::optional<int> JetContext::parameter_index(std::string_view name) const { return find(parameters_, name); }

bool JetContext::short_jet_names() const noexcept
{
    return std::all_of(independents_.begin(), independents_.end(), [](const auto& s) { return s.size() == 1; });
}

JetContext JetContext::with_evolution(std::vector<DiffPoly> rhs, int time) const
{
    if (n() != 2)
        throw PreconditionError("evolution mode requires exactly two independent variables");
    if (time != 0 && time != 1)
        throw PreconditionError("evolution time index out of range");
    if (static_cast<int>(rhs.size()) != m())
        throw PreconditionError("evolution mode needs a right-hand side for every dependent variable");
    JetContext out = free();
    out.time_ = time;
    out.evolution_rhs_ = std::move(rhs);
    for (const auto& f : out.evolution_rhs_)
        out.require_internal(f);
    return out;
}

JetContext JetContext::free() const
{
    JetContext out = *this;
    out.evolution_rhs_.clear();
    out.time_ = 1;
    return out;
}

bool JetContext::is_internal(const CoordId& c) const
{
    if (!is_evolution() || !c.is_jet())
        return true;
    return c.sigma.count(time_) == 0;
}

void JetContext::require_internal(const DiffPoly& f) const
{
    for (const auto& c : f.coordinates())
        if (!is_internal(c))
            throw PreconditionError("coordinate " + to_string(c, *this) +
                                    " is not an internal coordinate of the evolution equation");
}

}  // namespace cdcalc
