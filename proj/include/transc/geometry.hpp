#pragma once

#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "transc/core.hpp"

namespace transc {

// Radii are clamped into [kRadiusFloor, kRadiusCap] after every update:
// the floor keeps spheres from degenerating to a point or turning inside
// out, and the cap plays the same role for radii that the unit-ball
// projection plays for centers — without it, margin-ranking updates can
// inflate a sphere until it swallows most of the embedding space, which
// silently disables the membership constraints on everything inside it.
inline constexpr double kRadiusFloor = 1e-4;
inline constexpr double kRadiusCap = 0.5;

inline void check_dims(std::size_t a, std::size_t b, const char* where) {
    if (a != b)
        throw ContractViolation(std::string(where) + ": dimension mismatch (" + std::to_string(a) +
                                " vs " + std::to_string(b) + ")");
}

inline double l2_norm(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

inline double l2_dist(std::span<const double> a, std::span<const double> b) {
    check_dims(a.size(), b.size(), "l2_dist");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        double d = a[i] - b[i];
        s += d * d;
    }
    return std::sqrt(s);
}

// f_e(i, c) = ||i - p||_2 - m. Negative iff the instance sits strictly
// inside the concept sphere.
inline double score_instance_of(std::span<const double> instance, std::span<const double> center,
                                double radius) {
    check_dims(instance.size(), center.size(), "score_instance_of");
    return l2_dist(instance, center) - radius;
}

// Relative position of sphere s_i against s_j. Boundary ties are fixed:
// Inside wins at d + m_i == m_j, Separate wins at d == m_i + m_j, and
// Contains needs strict inequality.
enum class SpherePosition { Inside, Separate, Intersect, Contains };

inline const char* to_string(SpherePosition p) {
    switch (p) {
        case SpherePosition::Inside: return "inside";
        case SpherePosition::Separate: return "separate";
        case SpherePosition::Intersect: return "intersect";
        default: return "contains";
    }
}

inline SpherePosition classify_spheres(std::span<const double> center_i, double radius_i,
                                       std::span<const double> center_j, double radius_j) {
    double d = l2_dist(center_i, center_j);
    if (d + radius_i <= radius_j) return SpherePosition::Inside;
    if (d + radius_j < radius_i) return SpherePosition::Contains;
    if (d >= radius_i + radius_j) return SpherePosition::Separate;
    return SpherePosition::Intersect;
}

// f_c(c_i, c_j), piecewise on the relative position: the Separate,
// Intersect, and Inside cases share d + m_i - m_j (negative on Inside,
// rewarding slack); the Contains case drops the center-distance term.
inline double score_sub_class_of(std::span<const double> center_i, double radius_i,
                                 std::span<const double> center_j, double radius_j) {
    if (classify_spheres(center_i, radius_i, center_j, radius_j) == SpherePosition::Contains)
        return radius_i - radius_j;
    return l2_dist(center_i, center_j) + radius_i - radius_j;
}

// f_r(h, t) = ||h + r - t||_2^2.
inline double score_relational(std::span<const double> head, std::span<const double> relation,
                               std::span<const double> tail) {
    check_dims(head.size(), relation.size(), "score_relational");
    check_dims(head.size(), tail.size(), "score_relational");
    double s = 0.0;
    for (std::size_t i = 0; i < head.size(); ++i) {
        double d = head[i] + relation[i] - tail[i];
        s += d * d;
    }
    return s;
}

// All instance vectors, relation vectors, and concept spheres for one
// trained model, stored flat with stride dim().
class EmbeddingSpace {
public:
    EmbeddingSpace() = default;
    EmbeddingSpace(int dim, int num_instances, int num_concepts, int num_relations)
        : dim_(dim),
          num_instances_(num_instances),
          num_concepts_(num_concepts),
          num_relations_(num_relations),
          instances_(static_cast<std::size_t>(dim) * static_cast<std::size_t>(num_instances)),
          relations_(static_cast<std::size_t>(dim) * static_cast<std::size_t>(num_relations)),
          centers_(static_cast<std::size_t>(dim) * static_cast<std::size_t>(num_concepts)),
          radii_(static_cast<std::size_t>(num_concepts), kRadiusFloor) {}

    int dim() const { return dim_; }
    int num_instances() const { return num_instances_; }
    int num_concepts() const { return num_concepts_; }
    int num_relations() const { return num_relations_; }

    std::span<double> instance(int i) { return row(instances_, i); }
    std::span<const double> instance(int i) const { return row(instances_, i); }
    std::span<double> relation(int r) { return row(relations_, r); }
    std::span<const double> relation(int r) const { return row(relations_, r); }
    std::span<double> center(int c) { return row(centers_, c); }
    std::span<const double> center(int c) const { return row(centers_, c); }
    double& radius(int c) { return radii_[static_cast<std::size_t>(c)]; }
    double radius(int c) const { return radii_[static_cast<std::size_t>(c)]; }

    std::vector<double>& instance_data() { return instances_; }
    std::vector<double>& relation_data() { return relations_; }
    std::vector<double>& center_data() { return centers_; }
    std::vector<double>& radius_data() { return radii_; }
    const std::vector<double>& instance_data() const { return instances_; }
    const std::vector<double>& relation_data() const { return relations_; }
    const std::vector<double>& center_data() const { return centers_; }
    const std::vector<double>& radius_data() const { return radii_; }

    friend bool operator==(const EmbeddingSpace&, const EmbeddingSpace&) = default;

private:
    std::span<double> row(std::vector<double>& v, int i) {
        return {v.data() + static_cast<std::size_t>(i) * static_cast<std::size_t>(dim_),
                static_cast<std::size_t>(dim_)};
    }
    std::span<const double> row(const std::vector<double>& v, int i) const {
        return {v.data() + static_cast<std::size_t>(i) * static_cast<std::size_t>(dim_),
                static_cast<std::size_t>(dim_)};
    }

    int dim_ = 0;
    int num_instances_ = 0;
    int num_concepts_ = 0;
    int num_relations_ = 0;
    std::vector<double> instances_, relations_, centers_, radii_;
};

// Projection onto the unit ball: rescale to norm 1 only when outside.
// Repeats until the recomputed norm is within the ball so that a second
// projection is always a bit-exact no-op.
inline void project_unit_ball(std::span<double> v) {
    for (double n = l2_norm(v); n > 1.0; n = l2_norm(v)) {
        for (double& x : v) x /= n;
    }
}

}  // namespace transc
