#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "mrfq/array_io.hpp"
#include "mrfq/digest.hpp"
#include "mrfq/rng.hpp"

using namespace mrfq;

namespace {
std::filesystem::path temp_file(const std::string& name) {
    return std::filesystem::temp_directory_path() / name;
}
}  // namespace

TEST_CASE("rng determinism and mapping ranges", "[core]") {
    Rng a(42), b(42);
    for (int i = 0; i < 1000; ++i) {
        const double u = a.uniform01();
        REQUIRE(u == b.uniform01());
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
    }
    Rng c(42), d(43);
    bool any_diff = false;
    for (int i = 0; i < 10; ++i) any_diff |= (c.next_u64() != d.next_u64());
    REQUIRE(any_diff);
}

TEST_CASE("rng gaussian moments", "[core]") {
    Rng rng(7);
    const int n = 200000;
    double sum = 0, sumsq = 0;
    for (int i = 0; i < n; ++i) {
        const double z = rng.gaussian(1.0, 2.0);
        sum += z;
        sumsq += z * z;
    }
    const double mean = sum / n;
    const double var = sumsq / n - mean * mean;
    REQUIRE(mean == Catch::Approx(1.0).margin(0.05));
    REQUIRE(var == Catch::Approx(4.0).margin(0.15));
}

TEST_CASE("array format round trips bit-exactly", "[core]") {
    Rng rng(11);
    for (int trial = 0; trial < 5; ++trial) {
        ArrayData a;
        a.type = ElementType::Complex128;
        a.dims = {3, static_cast<std::uint64_t>(4 + trial), 2};
        const std::size_t n = a.element_count();
        for (std::size_t i = 0; i < n; ++i)
            a.complexes.emplace_back(rng.uniform(-10, 10), rng.uniform(-10, 10));
        const auto path = temp_file("mrfq_roundtrip.mrfa");
        save_array(path, a);
        const ArrayData back = load_array(path);
        REQUIRE(back.type == a.type);
        REQUIRE(back.dims == a.dims);
        REQUIRE(back.complexes.size() == a.complexes.size());
        for (std::size_t i = 0; i < n; ++i) {
            REQUIRE(std::memcmp(&back.complexes[i], &a.complexes[i], sizeof(cplx)) == 0);
        }
        REQUIRE(array_digest_hex(back) == array_digest_hex(a));
    }
}

TEST_CASE("bool and real arrays round trip", "[core]") {
    ArrayData b;
    b.type = ElementType::Bool;
    b.dims = {2, 3};
    b.bools = {1, 0, 1, 1, 0, 0};
    const auto path = temp_file("mrfq_bool.mrfa");
    save_array(path, b);
    REQUIRE(load_array(path).bools == b.bools);

    ArrayData r;
    r.type = ElementType::Real64;
    r.dims = {4};
    r.reals = {1.5, -0.0, 1e300, -3.25};
    save_array(path, r);
    const auto back = load_array(path);
    for (std::size_t i = 0; i < 4; ++i)
        REQUIRE(std::memcmp(&back.reals[i], &r.reals[i], sizeof(double)) == 0);
}

TEST_CASE("truncated file raises format error", "[core]") {
    ArrayData a;
    a.type = ElementType::Real64;
    a.dims = {8};
    a.reals.assign(8, 1.25);
    const auto bytes = encode_array(a);
    const auto path = temp_file("mrfq_trunc.mrfa");
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    f.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size() / 2));
    f.close();
    REQUIRE_THROWS_AS(load_array(path), format_error);
}

TEST_CASE("wrong magic names the expected magic", "[core]") {
    const auto path = temp_file("mrfq_magic.mrfa");
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    f << "NOPExxxxxxxxxxxxxxxx";
    f.close();
    try {
        load_array(path);
        FAIL("expected format_error");
    } catch (const format_error& e) {
        REQUIRE(std::string(e.what()).find("MRFA") != std::string::npos);
    }
}

TEST_CASE("version mismatch names both versions", "[core]") {
    ArrayData a;
    a.type = ElementType::Real64;
    a.dims = {1};
    a.reals = {0.0};
    auto bytes = encode_array(a);
    bytes[4] = 99;  // format version low byte
    try {
        decode_array(bytes.data(), bytes.size());
        FAIL("expected format_error");
    } catch (const format_error& e) {
        const std::string msg = e.what();
        REQUIRE(msg.find("99") != std::string::npos);
        REQUIRE(msg.find("1") != std::string::npos);
    }
}

TEST_CASE("digest is stable and content-sensitive", "[core]") {
    Digest d1, d2;
    d1.update("abc");
    d2.update("ab").update("c");
    REQUIRE(d1.hex() == d2.hex());
    Digest d3;
    d3.update("abd");
    REQUIRE(d3.hex() != d1.hex());
    REQUIRE(d1.hex().size() == 16);
}

TEST_CASE("eigen image bridges preserve layout", "[core]") {
    RealImage img(2, 3);
    img << 1, 2, 3, 4, 5, 6;
    const ArrayData a = to_array(img);
    REQUIRE(a.dims == std::vector<std::uint64_t>{2, 3});
    // row-major payload
    REQUIRE(a.reals == std::vector<double>{1, 2, 3, 4, 5, 6});
    const RealImage back = real_image_from(a);
    REQUIRE((back == img).all());
}
