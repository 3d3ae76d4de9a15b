#include "doctest.h"

#include "triginv/errors.hpp"
#include "triginv/rootdata.hpp"

using namespace triginv;

namespace {

std::vector<std::size_t> fundamental_orbit_sizes(const ModelChart& chart)
{
    std::vector<std::size_t> out;
    for (int a = 0; a < chart.rank(); ++a)
        out.push_back(chart.fundamental_orbit(a).size());
    return out;
}

} // namespace

TEST_CASE("positive root counts")
{
    CHECK(build_chart("A3")->positive_roots().size() == 6);
    CHECK(build_chart("BC3")->positive_roots().size() == 12);
    CHECK(build_chart("G2")->positive_roots().size() == 6);
    CHECK(build_chart("F4")->positive_roots().size() == 24);
    CHECK(build_chart("E6")->positive_roots().size() == 36);
}

TEST_CASE("weyl group orders")
{
    CHECK(weyl_group_order(*build_chart("A3")) == 24);
    CHECK(weyl_group_order(*build_chart("BC3")) == 48);
    CHECK(weyl_group_order(*build_chart("G2")) == 12);
    CHECK(weyl_group_order(*build_chart("F4")) == 1152);
    CHECK(weyl_group_order(*build_chart("E6")) == 51840);
}

TEST_CASE("fundamental orbit sizes")
{
    CHECK(fundamental_orbit_sizes(*build_chart("G2")) == std::vector<std::size_t>{6, 6});
    CHECK(fundamental_orbit_sizes(*build_chart("F4")) == std::vector<std::size_t>{24, 24, 96, 96});
    CHECK(fundamental_orbit_sizes(*build_chart("E6")) == std::vector<std::size_t>{27, 27, 216, 216, 72, 720});
    CHECK(fundamental_orbit_sizes(*build_chart("A3")) == std::vector<std::size_t>{4, 6, 4});
    CHECK(fundamental_orbit_sizes(*build_chart("BC3")) == std::vector<std::size_t>{6, 12, 8});
}

TEST_CASE("seeds are fundamental weights")
{
    for (const char* name : {"A4", "BC3", "G2", "F4", "E6"}) {
        auto chart = build_chart(name);
        for (int a = 0; a < chart->rank(); ++a) {
            const Weight w = chart->to_weight(chart->fundamental_seeds()[a]);
            for (int i = 0; i < chart->rank(); ++i)
                CHECK(w[i] == (i == a ? 1 : 0));
            CHECK(chart->to_coord(w) == chart->fundamental_seeds()[a]);
        }
    }
}

TEST_CASE("serial and parallel orbits agree")
{
    auto chart = build_chart("E6");
    for (int a = 0; a < 6; ++a) {
        const Weight w = chart->fundamental_weight(a);
        CHECK(weyl_orbit_weights(*chart, w) == weyl_orbit_weights_serial(*chart, w));
    }
}

TEST_CASE("orbits are reflection closed")
{
    auto chart = build_chart("F4");
    const auto orbit = weyl_orbit(*chart, chart->fundamental_seeds()[2]);
    for (const auto& root : chart->positive_roots())
        for (const auto& v : orbit) {
            auto r = reflect(*chart, root.vector, v);
            CHECK(std::binary_search(orbit.begin(), orbit.end(), r));
        }
}

TEST_CASE("dominant representative")
{
    auto chart = build_chart("E6");
    const auto& orbit = chart->fundamental_orbit(4);
    for (const auto& w : orbit)
        CHECK(dominant_representative(*chart, w) == chart->fundamental_weight(4));
}

TEST_CASE("pinned symbols drop ground-state factors")
{
    CHECK(ground_state_spec(*build_chart("BC2")).factors.size() == 6);
    CHECK(ground_state_spec(*build_chart("B2")).factors.size() == 4);
    CHECK(ground_state_spec(*build_chart("C2")).factors.size() == 4);
    CHECK(ground_state_spec(*build_chart("D3")).factors.size() == 6);
}

TEST_CASE("model id parsing")
{
    CHECK(ModelId::parse("A3").name() == "A3");
    CHECK(ModelId::parse("BC2").family == ModelFamily::BC);
    CHECK_THROWS_AS(ModelId::parse("E7"), ConfigurationError);
    CHECK_THROWS_AS(ModelId::parse("Q2"), ConfigurationError);
}
