#pragma once

// Upper and lower expectations generated by an explicit vertex list.

#include "sublin/model.hpp"
#include "sublin/report.hpp"

#include <cstddef>
#include <cstdint>
#include <string>

namespace sublin {

class SequenceModel;

struct UpperExpectation {
    double value = 0.0;
    std::size_t vertex = 0; // lowest index attaining the max
};

UpperExpectation upper_expect_detail(const CredalSet& p, const RandomVar& x);
double upper_expect(const CredalSet& p, const RandomVar& x);
double lower_expect(const CredalSet& p, const RandomVar& x);

struct ExpectationPair {
    double upper = 0.0;
    double lower = 0.0;
};

ExpectationPair expectation_pair(const CredalSet& p, const RandomVar& x);

struct AxiomReport {
    std::size_t trials = 0;
    std::size_t monotonicity_failures = 0;
    std::size_t constant_failures = 0;
    std::size_t subadditivity_failures = 0;
    std::size_t homogeneity_failures = 0;
    std::string first_counterexample;

    bool pass() const {
        return monotonicity_failures + constant_failures + subadditivity_failures + homogeneity_failures == 0;
    }
};

// Random X, Y (with Y <= X pointwise for monotonicity), lambda >= 0 and c.
AxiomReport check_axioms(const CredalSet& p, std::size_t trials, std::uint64_t seed);

// E[|XY|] <= E[|X|^p]^(1/p) E[|Y|^q]^(1/q) with 1/p + 1/q = 1.
InequalityReport holder_check(const CredalSet& p, const RandomVar& x, const RandomVar& y, double exponent_p);

struct FactorizationReport {
    double upper_joint = 0.0;   // E[X'Y']
    double upper_product = 0.0; // E[X'] E[Y']
    double lower_joint = 0.0;
    double lower_product = 0.0;
    InequalityReport upper; // lhs = |joint - product|, rhs = 0
    InequalityReport lower;
    bool pass() const { return upper.pass && lower.pass; }
};

// Product rule for a nonnegative pair under Peng independence, using the two
// coordinates of a horizon-2 model shifted by `shift`.
FactorizationReport factorization_check(const SequenceModel& model, double shift);

} // namespace sublin
