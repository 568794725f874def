#pragma once

#include "sublin/model.hpp"
#include "sublin/sequence.hpp"

namespace testing {

// Two outcomes {-1, +1}, X(w) = w, vertices Q_0.6 and Q_0.4 (weights listed as P(-1), P(+1)).
struct M0 {
    sublin::SpacePtr space = sublin::make_space({"-1", "+1"});
    sublin::CredalSet p{space, {sublin::make_measure(space, {0.6, 0.4}), sublin::make_measure(space, {0.4, 0.6})}};
    sublin::RandomVar x{space, {-1.0, 1.0}};

    sublin::SequenceModel seq(std::size_t n, sublin::Semantics s) const { return {p, x, n, s}; }
};

// Three outcomes with unequal vertices; frozen values come from tests/data/derive_frozen.py.
struct M3 {
    sublin::SpacePtr space = sublin::make_space({"a", "b", "c"});
    sublin::CredalSet p{space,
                        {sublin::make_measure(space, {0.2, 0.5, 0.3}), sublin::make_measure(space, {0.6, 0.3, 0.1}),
                         sublin::make_measure(space, {0.1, 0.1, 0.8})}};
    sublin::RandomVar x{space, {-1.5, 0.25, 2.0}};

    sublin::SequenceModel seq(std::size_t n, sublin::Semantics s) const { return {p, x, n, s}; }
};

} // namespace testing
