#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cdcalc/diff_poly.hpp"

namespace cdcalc {

/// Names of the independent variables, dependent variables and parameters of a
/// jet space, plus an optional evolution restriction u^j_t = f_j(x, t, u_x…).
///
/// In evolution mode n = 2, the internal coordinates are x, t, u^j_{x…x}, and
/// the total derivative in t is defined by substituting D_x^k(f_j) for u^j_{x^k}_t.
class JetContext {
public:
    JetContext(std::vector<std::string> independents, std::vector<std::string> dependents,
               std::vector<std::string> parameters = {});

    int n() const noexcept { return static_cast<int>(independents_.size()); }
    int m() const noexcept { return static_cast<int>(dependents_.size()); }
    int parameter_count() const noexcept { return static_cast<int>(parameters_.size()); }

    const std::vector<std::string>& independents() const noexcept { return independents_; }
    const std::vector<std::string>& dependents() const noexcept { return dependents_; }
    const std::vector<std::string>& parameters() const noexcept { return parameters_; }

    std::optional<int> independent_index(std::string_view name) const;
    std::optional<int> dependent_index(std::string_view name) const;
    std::optional<int> parameter_index(std::string_view name) const;

    /// True when every independent name is one character, enabling `u_xxt` shorthand.
    bool short_jet_names() const noexcept;

    bool is_evolution() const noexcept { return !evolution_rhs_.empty(); }
    /// Copy of this context in evolution mode. `rhs[j]` is the right-hand side for
    /// dependent j; `time` names the evolution variable (the other one is space).
    JetContext with_evolution(std::vector<DiffPoly> rhs, int time) const;
    /// Copy with the evolution restriction dropped.
    JetContext free() const;

    int time_index() const noexcept { return time_; }
    int space_index() const noexcept { return 1 - time_; }
    const std::vector<DiffPoly>& evolution_rhs() const noexcept { return evolution_rhs_; }

    /// In free mode every coordinate; in evolution mode x, t, parameters and u^j_{x…x}.
    bool is_internal(const CoordId& c) const;
    /// Throws PreconditionError if f uses a non-internal coordinate.
    void require_internal(const DiffPoly& f) const;

private:
    std::vector<std::string> independents_;
    std::vector<std::string> dependents_;
    std::vector<std::string> parameters_;
    std::vector<DiffPoly> evolution_rhs_;
    int time_ = 1;
};

using JetContextPtr = std::shared_ptr<const JetContext>;

inline JetContextPtr make_context(JetContext ctx)
{
    return std::make_shared<const JetContext>(std::move(ctx));
}

}  // namespace cdcalc
