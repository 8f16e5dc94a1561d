#pragma once

#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <string>
#include <vector>

#include "mrfq/common.hpp"
#include "mrfq/digest.hpp"

namespace mrfq {

// Project array container, one file per dense n-d array.
// Layout: magic "MRFA" | format version u16 | element-type u8
// (real64=1, complex128=2, bool=3) | dim count u8 | dims u64[] |
// row-major little-endian payload. Bool elements are one byte each.

constexpr std::uint16_t kArrayFormatVersion = 1;
constexpr char kArrayMagic[4] = {'M', 'R', 'F', 'A'};

enum class ElementType : std::uint8_t { Real64 = 1, Complex128 = 2, Bool = 3 };

struct ArrayData {
    ElementType type = ElementType::Real64;
    std::vector<std::uint64_t> dims;
    std::vector<double> reals;
    std::vector<cplx> complexes;
    std::vector<std::uint8_t> bools;

    std::size_t element_count() const {
        std::size_t n = 1;
        for (auto d : dims) n *= static_cast<std::size_t>(d);
        return dims.empty() ? 0 : n;
    }
};

namespace detail {

inline void put_u16(std::vector<unsigned char>& out, std::uint16_t v) {
    out.push_back(static_cast<unsigned char>(v & 0xFF));
    out.push_back(static_cast<unsigned char>(v >> 8));
}

inline void put_u64(std::vector<unsigned char>& out, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<unsigned char>((v >> (8 * i)) & 0xFF));
}

inline void put_f64(std::vector<unsigned char>& out, double d) {
    std::uint64_t bits;
    std::memcpy(&bits, &d, sizeof(bits));
    put_u64(out, bits);
}

class Reader {
public:
    Reader(const unsigned char* data, std::size_t size) : data_(data), size_(size) {}

    std::uint8_t u8() { return take(1)[0]; }
    std::uint16_t u16() {
        const auto* p = take(2);
        return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
    }
    std::uint64_t u64() {
        const auto* p = take(8);
        std::uint64_t v = 0;
        for (int i = 7; i >= 0; --i) v = (v << 8) | p[i];
        return v;
    }
    double f64() {
        const std::uint64_t bits = u64();
        double d;
        std::memcpy(&d, &bits, sizeof(d));
        return d;
    }
    const unsigned char* take(std::size_t n) {
        if (pos_ + n > size_) throw format_error("array data truncated");
        const unsigned char* p = data_ + pos_;
        pos_ += n;
        return p;
    }

private:
    const unsigned char* data_;
    std::size_t size_;
    std::size_t pos_ = 0;
};

}  // namespace detail

inline std::vector<unsigned char> encode_array(const ArrayData& a) {
    std::vector<unsigned char> out;
    out.insert(out.end(), kArrayMagic, kArrayMagic + 4);
    detail::put_u16(out, kArrayFormatVersion);
    out.push_back(static_cast<unsigned char>(a.type));
    out.push_back(static_cast<unsigned char>(a.dims.size()));
    for (auto d : a.dims) detail::put_u64(out, d);
    const std::size_t n = a.element_count();
    switch (a.type) {
        case ElementType::Real64:
            if (a.reals.size() != n) throw format_error("real payload size mismatch");
            for (double v : a.reals) detail::put_f64(out, v);
            break;
        case ElementType::Complex128:
            if (a.complexes.size() != n) throw format_error("complex payload size mismatch");
            for (const cplx& v : a.complexes) {
                detail::put_f64(out, v.real());
                detail::put_f64(out, v.imag());
            }
            break;
        case ElementType::Bool:
            if (a.bools.size() != n) throw format_error("bool payload size mismatch");
            for (auto v : a.bools) out.push_back(v ? 1 : 0);
            break;
    }
    return out;
}

inline ArrayData decode_array(const unsigned char* data, std::size_t size) {
    detail::Reader r(data, size);
    const unsigned char* magic = r.take(4);
    if (std::memcmp(magic, kArrayMagic, 4) != 0)
        throw format_error("bad magic: expected \"MRFA\"");
    const std::uint16_t version = r.u16();
    if (version != kArrayFormatVersion)
        throw format_error("array format version mismatch: file has " + std::to_string(version) +
                           ", reader supports " + std::to_string(kArrayFormatVersion));
    ArrayData a;
    const std::uint8_t type_code = r.u8();
    if (type_code < 1 || type_code > 3)
        throw format_error("unknown element-type code " + std::to_string(type_code));
    a.type = static_cast<ElementType>(type_code);
    const std::uint8_t ndim = r.u8();
    a.dims.resize(ndim);
    for (auto& d : a.dims) d = r.u64();
    const std::size_t n = a.element_count();
    switch (a.type) {
        case ElementType::Real64:
            a.reals.resize(n);
            for (auto& v : a.reals) v = r.f64();
            break;
        case ElementType::Complex128:
            a.complexes.resize(n);
            for (auto& v : a.complexes) {
                const double re = r.f64();
                const double im = r.f64();
                v = cplx(re, im);
            }
            break;
        case ElementType::Bool:
            a.bools.resize(n);
            for (auto& v : a.bools) v = *r.take(1);
            break;
    }
    return a;
}

inline void save_array(const std::filesystem::path& path, const ArrayData& a) {
    const auto bytes = encode_array(a);
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw format_error("cannot open for writing: " + path.string());
    f.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
    if (!f) throw format_error("write failed: " + path.string());
}

inline ArrayData load_array(const std::filesystem::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw format_error("cannot open: " + path.string());
    std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(f)),
                                     std::istreambuf_iterator<char>());
    return decode_array(bytes.data(), bytes.size());
}

inline std::string array_digest_hex(const ArrayData& a) {
    const auto bytes = encode_array(a);
    Digest d;
    d.update(bytes.data(), bytes.size());
    return d.hex();
}

// Eigen bridges. Images serialize row-major as (rows, cols).

inline ArrayData to_array(const RealImage& img) {
    ArrayData a;
    a.type = ElementType::Real64;
    a.dims = {static_cast<std::uint64_t>(img.rows()), static_cast<std::uint64_t>(img.cols())};
    a.reals.reserve(static_cast<std::size_t>(img.size()));
    for (Eigen::Index r = 0; r < img.rows(); ++r)
        for (Eigen::Index c = 0; c < img.cols(); ++c) a.reals.push_back(img(r, c));
    return a;
}

inline ArrayData to_array(const ComplexImage& img) {
    ArrayData a;
    a.type = ElementType::Complex128;
    a.dims = {static_cast<std::uint64_t>(img.rows()), static_cast<std::uint64_t>(img.cols())};
    a.complexes.reserve(static_cast<std::size_t>(img.size()));
    for (Eigen::Index r = 0; r < img.rows(); ++r)
        for (Eigen::Index c = 0; c < img.cols(); ++c) a.complexes.push_back(img(r, c));
    return a;
}

inline ArrayData to_array(const BoolImage& img) {
    ArrayData a;
    a.type = ElementType::Bool;
    a.dims = {static_cast<std::uint64_t>(img.rows()), static_cast<std::uint64_t>(img.cols())};
    a.bools.reserve(static_cast<std::size_t>(img.size()));
    for (Eigen::Index r = 0; r < img.rows(); ++r)
        for (Eigen::Index c = 0; c < img.cols(); ++c) a.bools.push_back(img(r, c) ? 1 : 0);
    return a;
}

inline ArrayData to_array(const std::vector<ComplexImage>& frames) {
    ArrayData a;
    a.type = ElementType::Complex128;
    if (frames.empty()) {
        a.dims = {0, 0, 0};
        return a;
    }
    a.dims = {frames.size(), static_cast<std::uint64_t>(frames[0].rows()),
              static_cast<std::uint64_t>(frames[0].cols())};
    a.complexes.reserve(frames.size() * static_cast<std::size_t>(frames[0].size()));
    for (const auto& img : frames)
        for (Eigen::Index r = 0; r < img.rows(); ++r)
            for (Eigen::Index c = 0; c < img.cols(); ++c) a.complexes.push_back(img(r, c));
    return a;
}

inline RealImage real_image_from(const ArrayData& a) {
    if (a.type != ElementType::Real64 || a.dims.size() != 2)
        throw format_error("expected 2-d real64 array");
    RealImage img(static_cast<Eigen::Index>(a.dims[0]), static_cast<Eigen::Index>(a.dims[1]));
    std::size_t i = 0;
    for (Eigen::Index r = 0; r < img.rows(); ++r)
        for (Eigen::Index c = 0; c < img.cols(); ++c) img(r, c) = a.reals[i++];
    return img;
}

inline ComplexImage complex_image_from(const ArrayData& a) {
    if (a.type != ElementType::Complex128 || a.dims.size() != 2)
        throw format_error("expected 2-d complex128 array");
    ComplexImage img(static_cast<Eigen::Index>(a.dims[0]), static_cast<Eigen::Index>(a.dims[1]));
    std::size_t i = 0;
    for (Eigen::Index r = 0; r < img.rows(); ++r)
        for (Eigen::Index c = 0; c < img.cols(); ++c) img(r, c) = a.complexes[i++];
    return img;
}

inline BoolImage bool_image_from(const ArrayData& a) {
    if (a.type != ElementType::Bool || a.dims.size() != 2)
        throw format_error("expected 2-d bool array");
    BoolImage img(static_cast<Eigen::Index>(a.dims[0]), static_cast<Eigen::Index>(a.dims[1]));
    std::size_t i = 0;
    for (Eigen::Index r = 0; r < img.rows(); ++r)
        for (Eigen::Index c = 0; c < img.cols(); ++c) img(r, c) = a.bools[i++] != 0;
    return img;
}

inline std::vector<ComplexImage> complex_frames_from(const ArrayData& a) {
    if (a.type != ElementType::Complex128 || a.dims.size() != 3)
        throw format_error("expected 3-d complex128 array");
    const auto n = static_cast<std::size_t>(a.dims[0]);
    const auto rows = static_cast<Eigen::Index>(a.dims[1]);
    const auto cols = static_cast<Eigen::Index>(a.dims[2]);
    std::vector<ComplexImage> frames(n, ComplexImage(rows, cols));
    std::size_t i = 0;
    for (auto& img : frames)
        for (Eigen::Index r = 0; r < rows; ++r)
            for (Eigen::Index c = 0; c < cols; ++c) img(r, c) = a.complexes[i++];
    return frames;
}

}  // namespace mrfq
