#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <vector>

#include "transc/geometry.hpp"

using namespace transc;

namespace {

std::vector<double> random_vec(std::size_t dim, transc::Rng& rng, double scale = 1.0) {
    std::uniform_real_distribution<double> u(-scale, scale);
    std::vector<double> v(dim);
    for (double& x : v) x = u(rng);
    return v;
}

// scalar-loop oracle, independent of l2_dist
double naive_norm_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
    return std::sqrt(s);
}

}  // namespace

TEST_CASE("score_instance_of basics") {
    std::vector<double> p{0.0, 0.0};
    CHECK(score_instance_of(p, p, 0.5) == doctest::Approx(-0.5));

    std::vector<double> i{0.6, 0.8};
    CHECK(score_instance_of(i, p, 0.3) == doctest::Approx(0.7));
}

TEST_CASE("score_instance_of matches independent norm in 50-d") {
    Rng rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        auto i = random_vec(50, rng);
        auto p = random_vec(50, rng);
        double expected = naive_norm_diff(i, p) - 0.2;
        CHECK(score_instance_of(i, p, 0.2) == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("score_instance_of dimension mismatch") {
    std::vector<double> a{1.0, 2.0}, b{1.0, 2.0, 3.0};
    CHECK_THROWS_AS(score_instance_of(a, b, 0.1), ContractViolation);
}

TEST_CASE("classify_spheres four cases") {
    std::vector<double> origin{0.0, 0.0};

    std::vector<double> pi{0.2, 0.0};
    CHECK(classify_spheres(pi, 0.3, origin, 0.6) == SpherePosition::Inside);

    std::vector<double> far{1.0, 0.0};
    CHECK(classify_spheres(far, 0.3, origin, 0.4) == SpherePosition::Separate);

    // all four predicates checked by hand: d=0.5, m_i=0.4, m_j=0.3
    // inside: 0.5+0.4>0.3 no; contains: 0.5+0.3<0.4 no; separate: 0.5>=0.7 no
    std::vector<double> mid{0.5, 0.0};
    CHECK(classify_spheres(mid, 0.4, origin, 0.3) == SpherePosition::Intersect);

    CHECK(classify_spheres(origin, 0.5, origin, 0.2) == SpherePosition::Contains);
}

TEST_CASE("classify_spheres boundary tie-breaks") {
    // dyadic values keep the boundary sums exact in floating point
    std::vector<double> origin{0.0, 0.0};
    std::vector<double> off{0.5, 0.0};
    // d + m_i == m_j: Inside wins
    CHECK(classify_spheres(off, 0.25, origin, 0.75) == SpherePosition::Inside);
    // d == m_i + m_j: Separate wins
    CHECK(classify_spheres(off, 0.25, origin, 0.25) == SpherePosition::Separate);
    // Contains requires strict inequality: d + m_j == m_i is not Contains
    CHECK(classify_spheres(origin, 0.5, origin, 0.5) == SpherePosition::Inside);
}

TEST_CASE("score_sub_class_of piecewise values") {
    std::vector<double> origin{0.0, 0.0};
    std::vector<double> far{1.0, 0.0};
    CHECK(score_sub_class_of(far, 0.3, origin, 0.4) == doctest::Approx(0.9));

    CHECK(score_sub_class_of(origin, 0.5, origin, 0.2) == doctest::Approx(0.3));  // Contains

    std::vector<double> off{0.2, 0.0};
    // Inside case shares the d + m_i - m_j formula
    REQUIRE(classify_spheres(off, 0.3, origin, 0.6) == SpherePosition::Inside);
    CHECK(score_sub_class_of(off, 0.3, origin, 0.6) == doctest::Approx(-0.1));
}

TEST_CASE("score_sub_class_of jump at the Contains boundary equals d") {
    // Just inside Contains vs just outside: the formula drops the d term.
    std::vector<double> origin{0.0, 0.0};
    std::vector<double> off{0.2, 0.0};
    double d = 0.2;
    double contains_side = score_sub_class_of(off, 0.5, origin, 0.2999);  // d+m_j<m_i
    double other_side = score_sub_class_of(off, 0.5, origin, 0.3001);     // intersect
    // difference across the boundary approaches exactly d
    CHECK(std::abs((other_side - contains_side) - d) < 1e-3);
}

TEST_CASE("score_relational basics") {
    std::vector<double> h{0.3, -0.2}, r{0.1, 0.4};
    std::vector<double> t{0.4, 0.2};
    CHECK(score_relational(h, r, t) == doctest::Approx(0.0));

    std::vector<double> h2{1.0, 0.0}, r2{0.0, 1.0}, t2{0.0, 0.0};
    CHECK(score_relational(h2, r2, t2) == doctest::Approx(2.0));
}

TEST_CASE("score_relational matches scalar-loop oracle in 100-d") {
    Rng rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        auto h = random_vec(100, rng);
        auto r = random_vec(100, rng);
        auto t = random_vec(100, rng);
        double expected = 0.0;
        for (std::size_t k = 0; k < h.size(); ++k)
            expected += (h[k] + r[k] - t[k]) * (h[k] + r[k] - t[k]);
        CHECK(score_relational(h, r, t) == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("case exhaustiveness over random sphere pairs") {
    Rng rng(13);
    std::uniform_real_distribution<double> radius(0.01, 1.0);
    for (int trial = 0; trial < 100000; ++trial) {
        auto pi = random_vec(3, rng);
        auto pj = random_vec(3, rng);
        double mi = radius(rng), mj = radius(rng);
        double d = l2_dist(pi, pj);
        int fired = 0;
        SpherePosition pos = classify_spheres(pi, mi, pj, mj);
        if (d + mi <= mj) {
            ++fired;
            CHECK(pos == SpherePosition::Inside);
        } else if (d + mj < mi) {
            ++fired;
            CHECK(pos == SpherePosition::Contains);
        } else if (d >= mi + mj) {
            ++fired;
            CHECK(pos == SpherePosition::Separate);
        } else {
            ++fired;
            CHECK(pos == SpherePosition::Intersect);
        }
        REQUIRE(fired == 1);
    }
}

TEST_CASE("transitivity: point in inner sphere stays in outer sphere") {
    Rng rng(17);
    std::uniform_real_distribution<double> radius(0.05, 0.8);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    int checked = 0;
    for (int trial = 0; trial < 100000; ++trial) {
        auto p1 = random_vec(3, rng, 0.5);
        auto p2 = random_vec(3, rng, 0.5);
        double m1 = radius(rng), m2 = radius(rng);
        if (classify_spheres(p1, m1, p2, m2) != SpherePosition::Inside) continue;
        // sample a point inside s1
        auto dir = random_vec(3, rng);
        double n = l2_norm(dir);
        if (n == 0.0) continue;
        double rad = m1 * unit(rng);
        std::vector<double> x(3);
        for (int k = 0; k < 3; ++k) x[static_cast<std::size_t>(k)] = p1[static_cast<std::size_t>(k)] + dir[static_cast<std::size_t>(k)] / n * rad;
        REQUIRE(score_instance_of(x, p1, m1) <= 1e-12);
        CHECK(score_instance_of(x, p2, m2) <= 1e-12);
        ++checked;
    }
    CHECK(checked > 100);
}

TEST_CASE("transitivity: nested Inside composes") {
    Rng rng(19);
    std::uniform_real_distribution<double> radius(0.05, 1.0);
    int checked = 0;
    for (int trial = 0; trial < 100000; ++trial) {
        auto p1 = random_vec(3, rng, 0.4);
        auto p2 = random_vec(3, rng, 0.4);
        auto p3 = random_vec(3, rng, 0.4);
        double m1 = radius(rng), m2 = radius(rng), m3 = radius(rng);
        if (classify_spheres(p1, m1, p2, m2) != SpherePosition::Inside) continue;
        if (classify_spheres(p2, m2, p3, m3) != SpherePosition::Inside) continue;
        CHECK(classify_spheres(p1, m1, p3, m3) == SpherePosition::Inside);
        ++checked;
    }
    CHECK(checked > 100);
}

TEST_CASE("projection onto unit ball is idempotent") {
    Rng rng(23);
    for (int trial = 0; trial < 1000; ++trial) {
        auto v = random_vec(10, rng, 3.0);
        auto once = v;
        project_unit_ball(once);
        auto twice = once;
        project_unit_ball(twice);
        CHECK(once == twice);
        CHECK(l2_norm(once) <= 1.0 + 1e-12);
    }
}
