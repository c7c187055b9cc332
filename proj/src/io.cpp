#include "nls/io.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include "nls/error.hpp"

namespace nls::io {
namespace {

constexpr std::array<char, 4> kMagic{'N', 'L', 'S', '1'};

template <class T>
void put_le(std::ostream& out, T value) {
    std::array<unsigned char, sizeof(T)> bytes;
    std::memcpy(bytes.data(), &value, sizeof(T));
    if constexpr (std::endian::native == std::endian::big) {
        std::reverse(bytes.begin(), bytes.end());
    }
    out.write(reinterpret_cast<const char*>(bytes.data()), sizeof(T));
}

template <class T>
T get_le(std::istream& in) {
    std::array<unsigned char, sizeof(T)> bytes;
    if (!in.read(reinterpret_cast<char*>(bytes.data()), sizeof(T))) {
        throw Error(ErrorKind::Io, "unexpected end of stream");
    }
    if constexpr (std::endian::native == std::endian::big) {
        std::reverse(bytes.begin(), bytes.end());
    }
    T value;
    std::memcpy(&value, bytes.data(), sizeof(T));
    return value;
}

} // namespace

void write_array(std::ostream& out, const GridFunction& f) {
    const Grid& g = f.grid();
    out.write(kMagic.data(), kMagic.size());
    put_le<std::uint32_t>(out, static_cast<std::uint32_t>(g.size()));
    put_le<double>(out, g.x_min());
    put_le<double>(out, g.dx());
    put_le<std::uint8_t>(out, static_cast<std::uint8_t>(g.topology()));
    for (const auto& z : f.values()) {
        put_le<double>(out, z.real());
        put_le<double>(out, z.imag());
    }
    if (!out) throw Error(ErrorKind::Io, "failed writing array dump");
}

GridFunction read_array(std::istream& in) {
    std::array<char, 4> magic{};
    if (!in.read(magic.data(), magic.size()) || magic != kMagic) {
        throw Error(ErrorKind::Io, "bad magic in array dump");
    }
    const auto n = get_le<std::uint32_t>(in);
    const auto x_min = get_le<double>(in);
    const auto dx = get_le<double>(in);
    const auto topo = get_le<std::uint8_t>(in);
    if (topo > 1) throw Error(ErrorKind::Io, "unknown topology tag " + std::to_string(topo));
    Grid grid(x_min, dx, n, static_cast<Topology>(topo));
    std::vector<cplx> v(n);
    for (auto& z : v) {
        const double re = get_le<double>(in);
        const double im = get_le<double>(in);
        z = cplx(re, im);
    }
    return GridFunction(grid, std::move(v));
}

void write_trajectory(std::ostream& out, const Trajectory& u) {
    const TimeGrid& tg = u.time_grid();
    put_le<std::uint32_t>(out, static_cast<std::uint32_t>(tg.n_steps()));
    put_le<double>(out, tg.t_start());
    put_le<double>(out, tg.dt());
    for (const auto& s : u.slices()) write_array(out, s);
}

Trajectory read_trajectory(std::istream& in) {
    const auto n_steps = get_le<std::uint32_t>(in);
    const auto t_start = get_le<double>(in);
    const auto dt = get_le<double>(in);
    TimeGrid tg(t_start, dt, n_steps);
    std::vector<GridFunction> slices;
    slices.reserve(tg.n_nodes());
    for (std::size_t m = 0; m < tg.n_nodes(); ++m) slices.push_back(read_array(in));
    return Trajectory(tg, std::move(slices));
}

void save_array(const std::filesystem::path& path, const GridFunction& f) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::Io, "cannot open " + path.string());
    write_array(out, f);
}

GridFunction load_array(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::Io, "cannot open " + path.string());
    return read_array(in);
}

void save_trajectory(const std::filesystem::path& path, const Trajectory& u) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::Io, "cannot open " + path.string());
    write_trajectory(out, u);
}

Trajectory load_trajectory(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::Io, "cannot open " + path.string());
    return read_trajectory(in);
}

} // namespace nls::io
