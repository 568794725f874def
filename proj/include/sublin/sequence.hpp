#pragma once

// Joint upper expectations of phi(X_1, ..., X_n) for coordinates that share
// one marginal credal set.
//
// Tensors over the joint outcome grid are dense and row-major with X_1 the
// slowest index. The dependence semantics decide how the grid is collapsed:
//
//   PengForward   X_{i+1} independent to (X_1..X_i): eliminate X_n first.
//   PengBackward  X_k independent to (X_{k+1}..X_n): eliminate X_1 first.
//   QwiseProduct  max over non-adaptive vertex tuples of the product measure.

#include "sublin/model.hpp"
#include "sublin/report.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sublin {

enum class Semantics { PengForward, PengBackward, QwiseProduct };

std::string_view to_string(Semantics s);
std::optional<Semantics> parse_semantics(std::string_view s);

inline constexpr std::size_t kDefaultTensorBudget = 10'000'000;

class SequenceModel {
public:
    // Identically distributed coordinates.
    SequenceModel(CredalSet marginal, RandomVar values, std::size_t horizon, Semantics semantics);
    // One value array per coordinate, all over the marginal's space.
    SequenceModel(CredalSet marginal, std::vector<RandomVar> coordinates, Semantics semantics);

    const CredalSet& marginal() const noexcept { return marginal_; }
    const std::vector<RandomVar>& coordinates() const noexcept { return coords_; }
    const RandomVar& coordinate(std::size_t k) const { return coords_.at(k); }
    std::size_t horizon() const noexcept { return coords_.size(); }
    std::size_t outcomes() const noexcept { return marginal_.space()->size(); }
    Semantics semantics() const noexcept { return semantics_; }
    bool identically_distributed() const;

    SequenceModel with_semantics(Semantics s) const { return SequenceModel(marginal_, coords_, s); }
    SequenceModel with_coordinates(std::vector<RandomVar> coords) const {
        return SequenceModel(marginal_, std::move(coords), semantics_);
    }
    // First `count` coordinates starting at `offset`.
    SequenceModel slice(std::size_t offset, std::size_t count) const;

    std::uint64_t fingerprint() const;

private:
    CredalSet marginal_;
    std::vector<RandomVar> coords_;
    Semantics semantics_;
};

class Functional {
public:
    using Fn = std::function<double(std::span<const double>)>;

    enum class Kind { MaxPartialSum, MaxAbsPartialSum, ReversedMaxPartialSum, SumPower, Coordinate, Custom };

    enum class PostKind { Abs, Power, PositivePart, Scale, Shift };
    struct Post {
        PostKind kind;
        double param = 0.0;
    };

    // max_{1<=k<=n} S_k
    static Functional max_partial_sum(std::size_t arity);
    // max_{1<=k<=n} |S_k|
    static Functional max_abs_partial_sum(std::size_t arity);
    // max_{0<=k<n} (S_n - S_k): the partial-sum maximum of the reversed sequence
    static Functional reversed_max_partial_sum(std::size_t arity);
    // |S_n|^p
    static Functional sum_power(std::size_t arity, double p);
    // x_k, zero-based
    static Functional coordinate(std::size_t arity, std::size_t k);
    static Functional custom(std::size_t arity, Fn fn, std::string label = "custom");
    static Functional constant(std::size_t arity, double c);

    std::size_t arity() const noexcept { return arity_; }
    Kind kind() const noexcept { return kind_; }
    const std::string& label() const noexcept { return label_; }

    double operator()(std::span<const double> x) const;

    Functional abs() const;
    Functional power(double p) const;
    Functional positive_part() const;
    Functional scaled(double lambda) const;
    Functional shifted(double c) const;

    // phi(x_offset, ..., x_{offset+arity-1}) viewed as a function of `total` coordinates.
    Functional lifted(std::size_t offset, std::size_t total) const;

private:
    Functional(Kind kind, std::size_t arity, double param, Fn fn, std::string label);
    Functional with_post(Post p, std::string suffix) const;
    double base(std::span<const double> x) const;

    Kind kind_;
    std::size_t arity_;
    double param_;
    std::shared_ptr<const Fn> fn_;
    std::vector<Post> post_;
    std::string label_;
};

Functional product(const Functional& a, const Functional& b);

struct EngineOptions {
    std::size_t tensor_budget = kDefaultTensorBudget;
    std::size_t tuple_budget = kDefaultTensorBudget;
};

// Dense tensor of f over the model's joint grid (X_1 slowest).
std::vector<double> materialize(const SequenceModel& model, const Functional& f,
                                const EngineOptions& options = {});

// Collapse an already materialized tensor under the model's semantics.
double eval_upper_tensor(const SequenceModel& model, std::vector<double> tensor, const EngineOptions& options = {});

double eval_upper(const SequenceModel& model, const Functional& f, const EngineOptions& options = {});
double eval_lower(const SequenceModel& model, const Functional& f, const EngineOptions& options = {});

enum class Monotonicity { Nondecreasing, Nonincreasing };

// Exhaustive finite-difference scan along every axis of f's grid, where axis
// k carries the values of `coords[k]` in sorted order.
bool is_monotone(const Functional& f, std::span<const RandomVar> coords, Monotonicity direction);

// Nonnegative coordinatewise monotone functional: a sum of products of
// per-coordinate ramps a + sum_j s_j (x - t_j)^+ (or (t_j - x)^+).
struct MonotoneFunctionalSpec {
    struct Ramp {
        double intercept = 0.0;
        std::vector<double> knots;
        std::vector<double> slopes;
    };
    std::size_t arity = 1;
    Monotonicity direction = Monotonicity::Nondecreasing;
    // terms[t][k]: ramp of coordinate k in product term t
    std::vector<std::vector<Ramp>> terms;

    double ramp(const Ramp& r, double x) const;
    Functional functional() const;
};

MonotoneFunctionalSpec generate_monotone_functional(std::uint64_t seed, std::size_t arity, Monotonicity direction,
                                                    double knot_lo = -3.0, double knot_hi = 3.0);

// Checks E[phi1(X) phi2(Y)] <= E[phi1(X)] E[phi2(Y)] with X the first `split`
// coordinates and Y the rest. For PengBackward the roles swap (X is the
// independent block), so phi2 must be nonnegative and E[phi1] >= 0.
InequalityReport nd_check(const SequenceModel& model, std::size_t split, const Functional& phi1,
                          const Functional& phi2, const EngineOptions& options = {});

struct IdenticalDistributionReport {
    // values[probe][k] = E[psi(X_k)] evaluated through the joint engine
    std::vector<std::vector<double>> values;
    std::vector<double> marginal; // E[psi(X_1)] from the marginal directly
    double max_deviation = 0.0;
    bool pass = false;
};

// Probes are univariate (arity 1).
IdenticalDistributionReport identical_distribution_check(const SequenceModel& model,
                                                         std::span<const Functional> probes);

} // namespace sublin
