#include "doctest.h"

#include <cmath>

#include "coop/errors.hpp"
#include "coop/geometry.hpp"

using namespace coop;

TEST_CASE("chain positions") {
    auto e = build_chain(2, 0.25, axis_x());
    REQUIRE(e.size() == 2);
    CHECK(e.positions[0].norm() == 0.0);
    CHECK(e.positions[1].x() == doctest::Approx(0.25));

    auto big = build_chain(200, 0.2, axis_z());
    CHECK(big.size() == 200);
    for (const auto& p : big.positions) {
        CHECK(p.y() == 0.0);
        CHECK(p.z() == 0.0);
    }
    CHECK(big.positions.back().x() == doctest::Approx(199 * 0.2));

    auto one = build_chain(1, 1.0, axis_x());
    CHECK(one.size() == 1);
    CHECK(one.positions[0].norm() == 0.0);
}

TEST_CASE("chain rejects bad input") {
    CHECK_THROWS_AS(build_chain(0, 0.1, axis_x()), Error);
    CHECK_THROWS_AS(build_chain(3, 0.0, axis_x()), Error);
    CHECK_THROWS_AS(build_chain(3, -1.0, axis_x()), Error);
    try {
        build_chain(3, -1.0, axis_x());
    } catch (const Error& err) {
        CHECK(err.kind() == ErrorKind::InvalidArgument);
        CHECK(exit_code_for(err.kind()) == 2);
    }
}

TEST_CASE("ring geometry") {
    auto r5 = build_ring(5, 0.5, true, axis_z());
    CHECK(r5.size() == 6);
    CHECK(r5.positions[0].norm() == 0.0);

    auto tri = build_ring(3, 0.7, false, axis_z());
    for (const auto& p : tri.positions) CHECK(p.norm() == doctest::Approx(0.7 / std::sqrt(3.0)));

    auto hex = build_ring(6, 0.1, false, axis_z());
    auto d = hex.distances();
    for (int j = 0; j < 6; ++j) CHECK(d(j, (j + 1) % 6) == doctest::Approx(0.1).epsilon(1e-12));

    CHECK_THROWS_AS(build_ring(2, 0.1, false, axis_z()), Error);
}

TEST_CASE("square array") {
    auto a = build_square_array(20, 20, 0.8, axis_x());
    CHECK(a.size() == 400);
    auto b = build_square_array(12, 12, 0.8, axis_x());
    CHECK(b.size() == 144);
    auto c = build_square_array(1, 1, 0.8, axis_x());
    CHECK(c.size() == 1);
    for (const auto& p : a.positions) CHECK(p.z() == 0.0);
}

TEST_CASE("orientation is normalized") {
    auto e = build_chain(2, 0.3, Eigen::Vector3d(1.0, 1.0, 0.0));
    CHECK(std::abs(e.dipole.norm() - 1.0) < 1e-12);
    CHECK_THROWS_AS(build_chain(2, 0.3, Eigen::Vector3d::Zero()), Error);
}

TEST_CASE("distance matrix properties and translation covariance") {
    std::vector<EmitterEnsemble> shapes{build_chain(7, 0.13, axis_x()), build_ring(8, 0.4, true, axis_z()),
                                        build_square_array(4, 3, 0.3, axis_x())};
    for (const auto& e : shapes) {
        auto d = e.distances();
        CHECK((d - d.transpose()).norm() == 0.0);
        for (Eigen::Index i = 0; i < d.rows(); ++i) {
            CHECK(d(i, i) == 0.0);
            for (Eigen::Index j = 0; j < d.cols(); ++j)
                if (i != j) CHECK(d(i, j) > 0.0);
        }
        auto moved = translated(e, Eigen::Vector3d(3.1, -2.7, 0.9));
        CHECK((moved.distances() - d).cwiseAbs().maxCoeff() < 1e-12);
    }
}
