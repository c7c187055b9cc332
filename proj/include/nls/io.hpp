#pragma once

#include <filesystem>
#include <iosfwd>

#include "nls/grid.hpp"
#include "nls/trajectory.hpp"

namespace nls::io {

// Array dump, little-endian:
//   "NLS1" | u32 n_points | f64 x_min | f64 dx | u8 topology | n_points x (f64 re, f64 im)
void write_array(std::ostream& out, const GridFunction& f);
GridFunction read_array(std::istream& in);

// Trajectory dump: u32 n_steps | f64 t_start | f64 dt | (n_steps + 1) array dumps.
void write_trajectory(std::ostream& out, const Trajectory& u);
Trajectory read_trajectory(std::istream& in);

void save_array(const std::filesystem::path& path, const GridFunction& f);
GridFunction load_array(const std::filesystem::path& path);
void save_trajectory(const std::filesystem::path& path, const Trajectory& u);
Trajectory load_trajectory(const std::filesystem::path& path);

} // namespace nls::io
