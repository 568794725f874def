#include "sublin/model.hpp"

#include "sublin/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <set>

namespace sublin {

std::string_view to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::NegativeWeight: return "NegativeWeight";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::SpaceMismatch: return "SpaceMismatch";
    case ErrorCode::InvalidSpace: return "InvalidSpace";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::EmptyCredalSet: return "EmptyCredalSet";
    case ErrorCode::BadExponent: return "BadExponent";
    case ErrorCode::BadEpsilon: return "BadEpsilon";
    case ErrorCode::PrNotNonnegative: return "PrNotNonnegative";
    case ErrorCode::ArityMismatch: return "ArityMismatch";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::HypothesisViolated: return "HypothesisViolated";
    case ErrorCode::SpaceTooLarge: return "SpaceTooLarge";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::UnknownIdentifier: return "UnknownIdentifier";
    case ErrorCode::ArityError: return "ArityError";
    case ErrorCode::EvalError: return "EvalError";
    case ErrorCode::FormatError: return "FormatError";
    case ErrorCode::IoError: return "IoError";
    }
    return "Unknown";
}

FiniteSpace::FiniteSpace(std::vector<std::string> labels) : labels_(std::move(labels)) {
    if (labels_.empty()) throw Error(ErrorCode::InvalidSpace, "outcome space must be nonempty");
    std::set<std::string> seen;
    for (const auto& l : labels_) {
        if (!seen.insert(l).second) throw Error(ErrorCode::InvalidSpace, "duplicate outcome label '" + l + "'");
    }
}

SpacePtr make_space(std::vector<std::string> labels) {
    return std::make_shared<const FiniteSpace>(std::move(labels));
}

void require_same_space(const SpacePtr& a, const SpacePtr& b, const char* where) {
    if (a == b) return;
    if (!a || !b || !(*a == *b)) throw Error(ErrorCode::SpaceMismatch, where);
}

Measure::Measure(SpacePtr space, std::vector<double> weights)
    : space_(std::move(space)), weights_(std::move(weights)) {
    if (!space_) throw Error(ErrorCode::InvalidSpace, "measure without space");
    if (weights_.size() != space_->size()) {
        throw Error(ErrorCode::LengthMismatch, "measure has " + std::to_string(weights_.size()) +
                                                   " weights for " + std::to_string(space_->size()) + " outcomes");
    }
    double sum = 0.0;
    for (double w : weights_) {
        if (!std::isfinite(w)) throw Error(ErrorCode::NonFinite, "measure weight is not finite");
        if (w < 0.0) throw Error(ErrorCode::NegativeWeight, "measure weight " + std::to_string(w) + " < 0");
        sum += w;
    }
    if (std::abs(sum - 1.0) > kNormalizationTolerance) {
        throw Error(ErrorCode::NotNormalized, "weights sum to " + std::to_string(sum));
    }
}

Measure make_measure(const SpacePtr& space, std::vector<double> weights) {
    return Measure(space, std::move(weights));
}

Measure point_mass(const SpacePtr& space, std::size_t outcome) {
    std::vector<double> w(space->size(), 0.0);
    w.at(outcome) = 1.0;
    return Measure(space, std::move(w));
}

RandomVar::RandomVar(SpacePtr space, std::vector<double> values)
    : space_(std::move(space)), values_(std::move(values)) {
    if (!space_) throw Error(ErrorCode::InvalidSpace, "random variable without space");
    if (values_.size() != space_->size()) throw Error(ErrorCode::LengthMismatch, "random variable length");
    for (double v : values_) {
        if (!std::isfinite(v)) throw Error(ErrorCode::NonFinite, "random variable entry is not finite");
    }
}

double RandomVar::min() const { return *std::min_element(values_.begin(), values_.end()); }
double RandomVar::max() const { return *std::max_element(values_.begin(), values_.end()); }

RandomVar RandomVar::operator-() const { return map([](double v) { return -v; }); }
RandomVar RandomVar::operator+(double c) const { return map([c](double v) { return v + c; }); }
RandomVar RandomVar::operator*(double c) const { return map([c](double v) { return v * c; }); }
RandomVar RandomVar::abs() const { return map([](double v) { return std::abs(v); }); }

RandomVar RandomVar::operator+(const RandomVar& other) const {
    require_same_space(space_, other.space_, "RandomVar::operator+");
    std::vector<double> out(values_.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = values_[i] + other.values_[i];
    return RandomVar(space_, std::move(out));
}

RandomVar RandomVar::operator*(const RandomVar& other) const {
    require_same_space(space_, other.space_, "RandomVar::operator*");
    std::vector<double> out(values_.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = values_[i] * other.values_[i];
    return RandomVar(space_, std::move(out));
}

RandomVar constant(const SpacePtr& space, double c) {
    return RandomVar(space, std::vector<double>(space->size(), c));
}

double linear_expect(const Measure& q, const RandomVar& x) {
    require_same_space(q.space(), x.space(), "linear_expect");
    double acc = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i) acc += q[i] * x[i];
    return acc;
}

CredalSet::CredalSet(SpacePtr space, std::vector<Measure> vertices)
    : space_(std::move(space)), vertices_(std::move(vertices)) {
    if (vertices_.empty()) throw Error(ErrorCode::EmptyCredalSet, "credal set needs at least one vertex");
    for (const auto& v : vertices_) require_same_space(space_, v.space(), "CredalSet vertex");
}

NormalizedCredalSet normalize(const CredalSet& p) {
    std::vector<Measure> kept;
    std::vector<std::size_t> dropped;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const auto& v = p.vertex(i);
        if (std::find(kept.begin(), kept.end(), v) != kept.end()) {
            dropped.push_back(i);
        } else {
            kept.push_back(v);
        }
    }
    return {CredalSet(p.space(), std::move(kept)), std::move(dropped)};
}

EventSet::EventSet(SpacePtr space, std::vector<bool> membership)
    : space_(std::move(space)), membership_(std::move(membership)) {
    if (!space_) throw Error(ErrorCode::InvalidSpace, "event without space");
    if (membership_.size() != space_->size()) throw Error(ErrorCode::LengthMismatch, "event length");
}

EventSet EventSet::empty(const SpacePtr& space) { return EventSet(space, std::vector<bool>(space->size(), false)); }
EventSet EventSet::full(const SpacePtr& space) { return EventSet(space, std::vector<bool>(space->size(), true)); }

EventSet EventSet::from_mask(const SpacePtr& space, std::uint64_t mask) {
    if (space->size() >= 64) throw Error(ErrorCode::SpaceTooLarge, "mask events need fewer than 64 outcomes");
    std::vector<bool> m(space->size());
    for (std::size_t i = 0; i < m.size(); ++i) m[i] = ((mask >> i) & 1U) != 0;
    return EventSet(space, std::move(m));
}

std::uint64_t EventSet::mask() const {
    if (membership_.size() >= 64) throw Error(ErrorCode::SpaceTooLarge, "mask needs fewer than 64 outcomes");
    std::uint64_t m = 0;
    for (std::size_t i = 0; i < membership_.size(); ++i) {
        if (membership_[i]) m |= (std::uint64_t{1} << i);
    }
    return m;
}

RandomVar EventSet::indicator() const {
    std::vector<double> v(membership_.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = membership_[i] ? 1.0 : 0.0;
    return RandomVar(space_, std::move(v));
}

EventSet EventSet::operator|(const EventSet& other) const {
    require_same_space(space_, other.space_, "EventSet union");
    std::vector<bool> m(membership_.size());
    for (std::size_t i = 0; i < m.size(); ++i) m[i] = membership_[i] || other.membership_[i];
    return EventSet(space_, std::move(m));
}

EventSet complement(const EventSet& a) {
    std::vector<bool> m(a.size());
    for (std::size_t i = 0; i < m.size(); ++i) m[i] = !a.contains(i);
    return EventSet(a.space(), std::move(m));
}

Fingerprint& Fingerprint::add(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
        h_ ^= (v >> (8 * i)) & 0xffU;
        h_ *= 0x100000001b3ULL;
    }
    return *this;
}

Fingerprint& Fingerprint::add(double v) {
    std::uint64_t bits = 0;
    if (v == 0.0) v = 0.0; // fold -0.0
    std::memcpy(&bits, &v, sizeof bits);
    return add(bits);
}

Fingerprint& Fingerprint::add(std::string_view s) {
    add(static_cast<std::uint64_t>(s.size()));
    for (unsigned char c : s) {
        h_ ^= c;
        h_ *= 0x100000001b3ULL;
    }
    return *this;
}

Fingerprint& Fingerprint::add(std::span<const double> v) {
    add(static_cast<std::uint64_t>(v.size()));
    for (double d : v) add(d);
    return *this;
}

std::uint64_t fingerprint(const CredalSet& p) {
    Fingerprint fp;
    for (const auto& l : p.space()->labels()) fp.add(l);
    fp.add(static_cast<std::uint64_t>(p.size()));
    for (const auto& v : p.vertices()) fp.add(v.weights());
    return fp.value();
}

std::string hex64(std::uint64_t v) {
    static constexpr char digits[] = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = digits[v & 0xfU];
        v >>= 4;
    }
    return out;
}

} // namespace sublin
