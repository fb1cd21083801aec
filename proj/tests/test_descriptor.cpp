#include <doctest.h>

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "elbp/descriptor.hpp"
#include "elbp/error.hpp"
#include "elbp/image.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using elbp::CodeImage;
using elbp::GrayImage;
using elbp::Margins;
using elbp::OperatorParams;
using elbp::PointSetTopology;

namespace {

GrayImage from_rows(const std::vector<std::vector<int>>& rows) {
    GrayImage img(static_cast<int>(rows[0].size()),
                  static_cast<int>(rows.size()));
    for (int y = 0; y < img.height; ++y)
        for (int x = 0; x < img.width; ++x)
            img.at(x, y) = static_cast<std::uint8_t>(rows[y][x]);
    return img;
}

}  // namespace

TEST_CASE("point-set topologies") {
    SUBCASE("single pixel") {
        const auto t = PointSetTopology::from_tag(1);
        CHECK(t.point_count() == 1);
        CHECK(t.offsets() == std::vector<std::pair<int, int>>{{0, 0}});
    }
    SUBCASE("2x2 block anchored at its top-left member") {
        const auto t = PointSetTopology::from_tag(4);
        CHECK(t.point_count() == 4);
        CHECK(t.offsets() == std::vector<std::pair<int, int>>{
                                 {0, 0}, {1, 0}, {0, 1}, {1, 1}});
    }
    SUBCASE("3x3 block anchored at its centre") {
        const auto t = PointSetTopology::from_tag(9);
        CHECK(t.point_count() == 9);
        const auto offs = t.offsets();
        REQUIRE(offs.size() == 9);
        CHECK(offs.front() == std::pair<int, int>{-1, -1});
        CHECK(offs.back() == std::pair<int, int>{1, 1});
    }
    SUBCASE("unsupported sizes are rejected") {
        CHECK_THROWS_AS((void)PointSetTopology::from_tag(2), elbp::Error);
        CHECK_THROWS_AS((void)PointSetTopology::from_tag(16), elbp::Error);
        CHECK_THROWS_AS((void)PointSetTopology::from_tag(0), elbp::Error);
    }
}

TEST_CASE("operator parameter construction and naming") {
    const auto p = OperatorParams::make(4, 9, 5);
    CHECK(p.neighbor.tag == 4);
    CHECK(p.central.tag == 9);
    CHECK(p.range == 5);
    CHECK(p.name() == "ELBP_4_9_5");
    CHECK(OperatorParams::make(1, 1, 1).name() == "LBP");
    CHECK(OperatorParams::make(1, 1, 2).name() == "ELBP_1_1_2");
    CHECK(OperatorParams::make(9, 4, 1).name() == "ELBP_9_4_1");

    CHECK_THROWS_AS((void)OperatorParams::make(4, 9, 0), elbp::Error);
    CHECK_THROWS_AS((void)OperatorParams::make(4, 9, -1), elbp::Error);
    CHECK_THROWS_AS((void)OperatorParams::make(3, 9, 1), elbp::Error);
}

TEST_CASE("operator margins") {
    const auto check_margins = [](const Margins& m, int l, int r, int t,
                                  int b) {
        CHECK(m.left == l);
        CHECK(m.right == r);
        CHECK(m.top == t);
        CHECK(m.bottom == b);
    };
    // Offset extrema are taken over both point-sets, so the 3x3 central
    // block widens every side even though the 2x2 neighbour block would not.
    check_margins(elbp::operator_margins(OperatorParams::make(4, 9, 5)), 6, 6,
                  6, 6);
    check_margins(elbp::operator_margins(OperatorParams::make(9, 9, 1)), 2, 2,
                  2, 2);
    check_margins(elbp::operator_margins(OperatorParams::make(1, 1, 1)), 1, 1,
                  1, 1);
    // Pure 2x2 sets reach one pixel right/down but zero left/up.
    check_margins(elbp::operator_margins(OperatorParams::make(4, 4, 3)), 3, 4,
                  3, 4);
}

TEST_CASE("classic lbp code") {
    SUBCASE("worked 3x3 example") {
        const GrayImage img =
            from_rows({{10, 20, 30}, {40, 50, 60}, {70, 80, 90}});
        CHECK(elbp::lbp_code(img, 1, 1) == 30);
    }
    SUBCASE("ties count as set bits, so a constant patch codes to 255") {
        const GrayImage img(3, 3, 77);
        CHECK(elbp::lbp_code(img, 1, 1) == 255);
    }
    SUBCASE("strict maximum at the centre codes to 0") {
        GrayImage img(3, 3, 10);
        img.at(1, 1) = 200;
        CHECK(elbp::lbp_code(img, 1, 1) == 0);
    }
    SUBCASE("border pixels are rejected") {
        const GrayImage img(4, 4, 0);
        CHECK_THROWS_AS((void)elbp::lbp_code(img, 0, 1), elbp::Error);
        CHECK_THROWS_AS((void)elbp::lbp_code(img, 1, 0), elbp::Error);
        CHECK_THROWS_AS((void)elbp::lbp_code(img, 3, 1), elbp::Error);
        CHECK_THROWS_AS((void)elbp::lbp_code(img, 1, 3), elbp::Error);
    }
    SUBCASE("matches the independent reference on random images") {
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            const GrayImage img = testutil::ranged_image(seed, 12, 12, 0, 255);
            for (int y = 1; y < img.height - 1; ++y)
                for (int x = 1; x < img.width - 1; ++x)
                    REQUIRE(elbp::lbp_code(img, x, y) ==
                            oracle::lbp_code(img, x, y));
        }
    }
}

TEST_CASE("elbp code") {
    SUBCASE("worked example on a horizontal gradient") {
        // I(x, y) = 16x on 9x9. The 3x3 central block at (4,4) has mean 64;
        // the eight 2x2 neighbour blocks at range 2 have means
        // 40,72,104,104,104,72,40,40 clockwise from north-west, giving
        // bit pattern 01111100 = 124.
        GrayImage img(9, 9);
        for (int y = 0; y < 9; ++y)
            for (int x = 0; x < 9; ++x)
                img.at(x, y) = static_cast<std::uint8_t>(16 * x);
        CHECK(elbp::elbp_code(img, 4, 4, OperatorParams::make(4, 9, 2)) ==
              124);
    }
    SUBCASE("degenerate (1,1,1) operator equals classic lbp") {
        const auto params = OperatorParams::make(1, 1, 1);
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            const GrayImage img = testutil::ranged_image(seed, 10, 10, 0, 255);
            for (int y = 1; y < img.height - 1; ++y)
                for (int x = 1; x < img.width - 1; ++x)
                    REQUIRE(elbp::elbp_code(img, x, y, params) ==
                            elbp::lbp_code(img, x, y));
        }
    }
    SUBCASE("matches the floating-point mean reference") {
        const std::vector<std::array<int, 3>> configs = {
            {1, 1, 1}, {4, 4, 1}, {4, 9, 2}, {9, 4, 2}, {9, 9, 3}, {4, 9, 5}};
        for (const auto& [nt, ct, r] : configs) {
            const auto params = OperatorParams::make(nt, ct, r);
            const auto m = elbp::operator_margins(params);
            for (std::uint64_t seed = 0; seed < 8; ++seed) {
                const GrayImage img =
                    testutil::ranged_image(seed * 31 + 5, 20, 20, 0, 255);
                for (int y = m.top; y < img.height - m.bottom; ++y)
                    for (int x = m.left; x < img.width - m.right; ++x)
                        REQUIRE(elbp::elbp_code(img, x, y, params) ==
                                oracle::elbp_code(img, x, y, nt, ct, r));
            }
        }
    }
    SUBCASE("out-of-reach anchors are rejected") {
        const GrayImage img(9, 9, 0);
        const auto params = OperatorParams::make(4, 9, 2);
        CHECK_THROWS_AS((void)elbp::elbp_code(img, 1, 4, params), elbp::Error);
        CHECK_THROWS_AS((void)elbp::elbp_code(img, 4, 6, params), elbp::Error);
        CHECK_NOTHROW((void)elbp::elbp_code(img, 4, 4, params));
        // The margin formula maximizes the offset extent over both
        // point-sets, so it is conservative: x=2 sits outside the margin
        // region yet all of its actual samples are in bounds.
        CHECK(elbp::operator_margins(params).left == 3);
        CHECK_NOTHROW((void)elbp::elbp_code(img, 2, 4, params));
    }
}

TEST_CASE("code image") {
    SUBCASE("geometry for the default operator on 128x128") {
        const GrayImage img = testutil::ranged_image(1, 128, 128, 0, 255);
        const CodeImage codes =
            elbp::code_image(img, OperatorParams::make(4, 9, 5));
        CHECK(codes.width == 116);
        CHECK(codes.height == 116);
        CHECK(codes.origin_x == 6);
        CHECK(codes.origin_y == 6);
        CHECK(codes.codes.size() == 116u * 116u);
    }
    SUBCASE("geometry for a 3x3 operator on the smallest viable image") {
        const GrayImage img = testutil::ranged_image(2, 9, 9, 0, 255);
        const CodeImage codes =
            elbp::code_image(img, OperatorParams::make(9, 9, 1));
        CHECK(codes.width == 5);
        CHECK(codes.height == 5);
        CHECK(codes.origin_x == 2);
        CHECK(codes.origin_y == 2);
    }
    SUBCASE("asymmetric margins shift the origin but not the extent rule") {
        const GrayImage img = testutil::ranged_image(3, 30, 26, 0, 255);
        const CodeImage codes =
            elbp::code_image(img, OperatorParams::make(4, 4, 3));
        CHECK(codes.origin_x == 3);
        CHECK(codes.origin_y == 3);
        CHECK(codes.width == 30 - 7);
        CHECK(codes.height == 26 - 7);
    }
    SUBCASE("agrees with per-pixel evaluation everywhere") {
        const auto params = OperatorParams::make(4, 9, 2);
        const GrayImage img = testutil::ranged_image(4, 33, 29, 0, 255);
        const CodeImage codes = elbp::code_image(img, params);
        for (int y = 0; y < codes.height; ++y)
            for (int x = 0; x < codes.width; ++x)
                REQUIRE(codes.at(x, y) ==
                        elbp::elbp_code(img, x + codes.origin_x,
                                        y + codes.origin_y, params));
    }
    SUBCASE("identical output for any thread count") {
        const auto params = OperatorParams::make(4, 9, 5);
        const GrayImage img = testutil::ranged_image(5, 90, 70, 0, 255);
        const CodeImage one = elbp::code_image(img, params, 1);
        for (int threads : {2, 3, 7, 16, 0}) {
            CHECK(elbp::code_image(img, params, threads) == one);
        }
    }
    SUBCASE("too-small inputs are rejected with a clear error") {
        const auto params = OperatorParams::make(4, 9, 5);  // margins 6
        const GrayImage tiny = testutil::ranged_image(6, 12, 40, 0, 255);
        CHECK_THROWS_AS((void)elbp::code_image(tiny, params), elbp::Error);
        const GrayImage ok = testutil::ranged_image(6, 13, 13, 0, 255);
        const CodeImage codes = elbp::code_image(ok, params);
        CHECK(codes.width == 1);
        CHECK(codes.height == 1);
    }
}

TEST_CASE("descriptor invariances") {
    SUBCASE("monotone brightness changes leave codes untouched") {
        // Codes compare block means, and means are affine-equivariant, so a
        // positive rescale plus shift (kept clamp-free) cannot flip any bit.
        const std::vector<std::array<int, 3>> configs = {
            {1, 1, 1}, {4, 4, 2}, {9, 9, 2}, {4, 9, 5}};
        for (const auto& [nt, ct, r] : configs) {
            const auto params = OperatorParams::make(nt, ct, r);
            for (std::uint64_t seed = 0; seed < 6; ++seed) {
                const GrayImage img =
                    testutil::ranged_image(seed, 24, 24, 10, 100);
                for (const auto& [a, b] : std::vector<std::pair<int, int>>{
                         {2, 10}, {2, -10}, {1, 40}, {2, 0}}) {
                    GrayImage mapped = img;
                    for (auto& px : mapped.data)
                        px = static_cast<std::uint8_t>(a * px + b);
                    REQUIRE(elbp::code_image(mapped, params).codes ==
                            elbp::code_image(img, params).codes);
                }
            }
        }
    }
    SUBCASE("codes are translation equivariant") {
        const auto params = OperatorParams::make(4, 9, 2);
        const GrayImage img = testutil::ranged_image(17, 40, 40, 0, 255);
        constexpr int kShiftX = 5, kShiftY = 7;
        GrayImage sub(img.width - kShiftX, img.height - kShiftY);
        for (int y = 0; y < sub.height; ++y)
            for (int x = 0; x < sub.width; ++x)
                sub.at(x, y) = img.at(x + kShiftX, y + kShiftY);
        const CodeImage whole = elbp::code_image(img, params);
        const CodeImage part = elbp::code_image(sub, params);
        for (int y = 0; y < part.height; ++y)
            for (int x = 0; x < part.width; ++x) {
                const int sx = x + part.origin_x + kShiftX - whole.origin_x;
                const int sy = y + part.origin_y + kShiftY - whole.origin_y;
                REQUIRE(part.at(x, y) == whole.at(sx, sy));
            }
    }
}
