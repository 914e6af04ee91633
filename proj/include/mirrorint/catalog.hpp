#pragma once

// Bundled example systems.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "forms.hpp"
#include "operators.hpp"

namespace mirrorint::catalog {

/// e = ((3,3)), f = ((1,0) x3, (0,1) x3)
inline FormSystem intro()
{
    return FormSystem(2, {{3, 3}}, {{1, 0}, {1, 0}, {1, 0}, {0, 1}, {0, 1}, {0, 1}});
}

/// e = ((3,0)), f = ((2,0),(1,0)): Delta vanishes at (1/2, 0) in D.
inline FormSystem counterexample() { return FormSystem(2, {{3, 0}}, {{2, 0}, {1, 0}}); }

/// d = 1, e = (2), f = (1,1): central binomial coefficients.
inline FormSystem central_binomial() { return FormSystem(1, {{2}}, {{1}, {1}}); }

/// d = 1, e = (1,1), f = (2), raw: Delta(1/2) = -1.
inline FormSystem landau_ii() { return FormSystem(FormSystem::raw, 1, {{1}, {1}}, {{2}}); }

inline FormSystem case30() { return case30_system(); }

struct Entry
{
    std::string name;
    FormSystem sys;
};

inline std::vector<Entry> systems()
{
    return {{"intro", intro()},
            {"counterexample", counterexample()},
            {"central_binomial", central_binomial()},
            {"landau_ii", landau_ii()},
            {"case30", case30()}};
}

inline std::optional<FormSystem> find(const std::string& name)
{
    for (auto& e : systems()) {
        if (e.name == name) {
            return e.sys;
        }
    }
    return std::nullopt;
}

inline std::optional<CaseRecord> find_case(const std::string& name)
{
    if (name == "case30") {
        return case30_record();
    }
    return std::nullopt;
}

/// Default scan order: 12 for one variable, 8 for two, 6 beyond.
inline std::int64_t default_order(std::size_t d)
{
    if (d == 1) {
        return 12;
    }
    return d == 2 ? 8 : 6;
}

} // namespace mirrorint::catalog
