#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "subclust/kernels.hpp"

using namespace subclust;

namespace {

std::vector<double> draw(std::size_t n, std::mt19937_64& rng) {
    std::normal_distribution<double> normal(0.0, 3.0);
    std::vector<double> v(n);
    for (double& x : v) x = normal(rng);
    return v;
}

void check_table(const kernels::KernelTable& t) {
    const auto& ref = kernels::table(kernels::Isa::scalar);
    std::mt19937_64 rng(42);
    for (std::size_t n = 0; n <= 67; ++n) {
        const auto a = draw(n, rng);
        const auto b = draw(n, rng);
        const double scale = 1.0 + ref.dot(a.data(), a.data(), n) + ref.dot(b.data(), b.data(), n);
        CHECK(t.dot(a.data(), b.data(), n) == doctest::Approx(ref.dot(a.data(), b.data(), n)).epsilon(1e-13).scale(scale));
        CHECK(t.squared_distance(a.data(), b.data(), n) ==
              doctest::Approx(ref.squared_distance(a.data(), b.data(), n)).epsilon(1e-13).scale(scale));
        auto y1 = b;
        auto y2 = b;
        ref.axpy(0.7, a.data(), y1.data(), n);
        t.axpy(0.7, a.data(), y2.data(), n);
        for (std::size_t i = 0; i < n; ++i) CHECK(y2[i] == doctest::Approx(y1[i]).epsilon(1e-15).scale(1 + std::abs(y1[i])));
    }
    for (std::size_t dim = 1; dim <= 9; ++dim)
        for (std::size_t k = 1; k <= 11; ++k)
            for (int rep = 0; rep < 5; ++rep) {
                const auto centers = draw(k * dim, rng);
                const auto point = draw(dim, rng);
                double d_ref = 0, d = 0;
                const auto j_ref = ref.nearest(point.data(), centers.data(), k, dim, &d_ref);
                const auto j = t.nearest(point.data(), centers.data(), k, dim, &d);
                CHECK(j == j_ref);
                CHECK(d == doctest::Approx(d_ref).epsilon(1e-13));
            }
    // exact ties resolve to the lowest index
    const std::vector<double> tied{1, 0, -1, 0, 1, 0, -1, 0, 1, 0};
    const std::vector<double> origin{0, 0};
    double best = -1;
    CHECK(t.nearest(origin.data(), tied.data(), 5, 2, &best) == 0);
    CHECK(best == 1.0);
    const std::vector<double> line{5, 3, 1, 1, 1, 1};
    const std::vector<double> at{1};
    CHECK(t.nearest(at.data(), line.data(), 6, 1, &best) == 2);
    CHECK(best == 0.0);
}

}  // namespace

TEST_CASE("scalar kernels") {
    const auto& s = kernels::table(kernels::Isa::scalar);
    const std::vector<double> a{1, 2, 3};
    const std::vector<double> b{4, -5, 6};
    CHECK(s.dot(a.data(), b.data(), 3) == 12.0);
    CHECK(s.squared_distance(a.data(), b.data(), 3) == 9.0 + 49.0 + 9.0);
    check_table(s);
}

TEST_CASE("avx2 kernels match the scalar reference") {
    if (!kernels::available(kernels::Isa::avx2)) {
        MESSAGE("AVX2 not available on this CPU; skipping");
        return;
    }
    check_table(kernels::table(kernels::Isa::avx2));
}

TEST_CASE("active table") {
    const auto& t = kernels::active();
    CHECK(kernels::available(t.isa));
    CHECK(!kernels::name(t.isa).empty());
}
