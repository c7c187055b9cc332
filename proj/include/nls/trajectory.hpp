#pragma once

#include <cstddef>
#include <vector>

#include "nls/grid.hpp"

namespace nls {

// Nodes t_m = t_start + m*dt for m = 0..n_steps.
class TimeGrid {
public:
    TimeGrid(double t_start, double dt, std::size_t n_steps);

    // n_steps = round(t_end / dt); dt is adjusted so the last node lands on t_end.
    static TimeGrid covering(double t_start, double t_end, double dt);

    double t_start() const noexcept { return t_start_; }
    double dt() const noexcept { return dt_; }
    std::size_t n_steps() const noexcept { return n_steps_; }
    std::size_t n_nodes() const noexcept { return n_steps_ + 1; }
    double t_end() const noexcept { return time(n_steps_); }
    double time(std::size_t m) const noexcept { return t_start_ + dt_ * static_cast<double>(m); }

    bool matches(const TimeGrid& other) const noexcept;

private:
    double t_start_;
    double dt_;
    std::size_t n_steps_;
};

// One GridFunction per node of a TimeGrid, all on the same spatial grid.
class Trajectory {
public:
    Trajectory(TimeGrid time_grid, std::vector<GridFunction> slices);

    static Trajectory zeros(const Grid& grid, const TimeGrid& time_grid);

    const TimeGrid& time_grid() const noexcept { return time_grid_; }
    const Grid& grid() const noexcept { return slices_.front().grid(); }
    std::size_t size() const noexcept { return slices_.size(); }
    const GridFunction& operator[](std::size_t m) const noexcept { return slices_[m]; }
    const GridFunction& back() const noexcept { return slices_.back(); }
    const std::vector<GridFunction>& slices() const noexcept { return slices_; }

    Trajectory operator+(const Trajectory& other) const;
    Trajectory operator-(const Trajectory& other) const;

private:
    TimeGrid time_grid_;
    std::vector<GridFunction> slices_;
};

void require_same_layout(const Trajectory& a, const Trajectory& b);

} // namespace nls
