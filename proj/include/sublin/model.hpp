#pragma once

// Ground types: a finite outcome space with the full power set as events and
// every real function as a random variable.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace sublin {

inline constexpr double kNormalizationTolerance = 1e-12;

class FiniteSpace {
public:
    explicit FiniteSpace(std::vector<std::string> labels);

    std::size_t size() const noexcept { return labels_.size(); }
    const std::vector<std::string>& labels() const noexcept { return labels_; }
    const std::string& label(std::size_t i) const { return labels_.at(i); }

    bool operator==(const FiniteSpace& other) const { return labels_ == other.labels_; }

private:
    std::vector<std::string> labels_;
};

using SpacePtr = std::shared_ptr<const FiniteSpace>;

SpacePtr make_space(std::vector<std::string> labels);

// Throws SpaceMismatch unless both refer to the same outcome list.
void require_same_space(const SpacePtr& a, const SpacePtr& b, const char* where);

class Measure {
public:
    Measure(SpacePtr space, std::vector<double> weights);

    const SpacePtr& space() const noexcept { return space_; }
    std::span<const double> weights() const noexcept { return weights_; }
    double operator[](std::size_t i) const { return weights_[i]; }
    std::size_t size() const noexcept { return weights_.size(); }

    bool operator==(const Measure& other) const { return weights_ == other.weights_; }

private:
    SpacePtr space_;
    std::vector<double> weights_;
};

Measure make_measure(const SpacePtr& space, std::vector<double> weights);
Measure point_mass(const SpacePtr& space, std::size_t outcome);

class RandomVar {
public:
    RandomVar(SpacePtr space, std::vector<double> values);

    const SpacePtr& space() const noexcept { return space_; }
    std::span<const double> values() const noexcept { return values_; }
    double operator[](std::size_t i) const { return values_[i]; }
    std::size_t size() const noexcept { return values_.size(); }

    double min() const;
    double max() const;

    RandomVar operator-() const;
    RandomVar operator+(double c) const;
    RandomVar operator*(double c) const;
    RandomVar operator+(const RandomVar& other) const;
    RandomVar operator*(const RandomVar& other) const;
    RandomVar abs() const;

    template <typename F>
    RandomVar map(F&& f) const {
        std::vector<double> out(values_.size());
        for (std::size_t i = 0; i < values_.size(); ++i) out[i] = f(values_[i]);
        return RandomVar(space_, std::move(out));
    }

private:
    SpacePtr space_;
    std::vector<double> values_;
};

RandomVar constant(const SpacePtr& space, double c);

double linear_expect(const Measure& q, const RandomVar& x);

class CredalSet {
public:
    CredalSet(SpacePtr space, std::vector<Measure> vertices);

    const SpacePtr& space() const noexcept { return space_; }
    const std::vector<Measure>& vertices() const noexcept { return vertices_; }
    const Measure& vertex(std::size_t i) const { return vertices_.at(i); }
    std::size_t size() const noexcept { return vertices_.size(); }

private:
    SpacePtr space_;
    std::vector<Measure> vertices_;
};

struct NormalizedCredalSet {
    CredalSet set;
    // Indices (into the original list) of vertices dropped as exact duplicates.
    std::vector<std::size_t> duplicates;
};

NormalizedCredalSet normalize(const CredalSet& p);

class EventSet {
public:
    EventSet(SpacePtr space, std::vector<bool> membership);

    static EventSet empty(const SpacePtr& space);
    static EventSet full(const SpacePtr& space);
    // Bit i of mask selects outcome i; space size must be < 64.
    static EventSet from_mask(const SpacePtr& space, std::uint64_t mask);

    const SpacePtr& space() const noexcept { return space_; }
    bool contains(std::size_t i) const { return membership_.at(i); }
    std::size_t size() const noexcept { return membership_.size(); }
    std::uint64_t mask() const;
    RandomVar indicator() const;

    EventSet operator|(const EventSet& other) const;
    bool operator==(const EventSet& other) const { return membership_ == other.membership_; }

private:
    SpacePtr space_;
    std::vector<bool> membership_;
};

EventSet complement(const EventSet& a);

// Canonical FNV-1a digest of a credal set and its value arrays; used to tag
// reports and trajectories.
std::uint64_t fingerprint(const CredalSet& p);

class Fingerprint {
public:
    Fingerprint& add(std::uint64_t v);
    Fingerprint& add(double v);
    Fingerprint& add(std::string_view s);
    Fingerprint& add(std::span<const double> v);
    std::uint64_t value() const noexcept { return h_; }

private:
    std::uint64_t h_ = 0xcbf29ce484222325ULL;
};

std::string hex64(std::uint64_t v);

} // namespace sublin
