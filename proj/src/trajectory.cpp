#include "nls/trajectory.hpp"

#include <cmath>

#include "nls/error.hpp"

namespace nls {

TimeGrid::TimeGrid(double t_start, double dt, std::size_t n_steps)
    : t_start_(t_start), dt_(dt), n_steps_(n_steps) {
    if (!std::isfinite(t_start) || !std::isfinite(dt) || !(dt > 0.0)) {
        throw Error(ErrorKind::InvalidArgument, "time step must be finite and positive");
    }
    if (n_steps < 1) throw Error(ErrorKind::InvalidArgument, "time grid needs at least one step");
}

TimeGrid TimeGrid::covering(double t_start, double t_end, double dt) {
    if (!(t_end > t_start) || !(dt > 0.0)) {
        throw Error(ErrorKind::InvalidArgument, "time interval must be non-empty with dt > 0");
    }
    const double steps = std::max(1.0, std::round((t_end - t_start) / dt));
    const auto n = static_cast<std::size_t>(steps);
    return TimeGrid(t_start, (t_end - t_start) / steps, n);
}

bool TimeGrid::matches(const TimeGrid& other) const noexcept {
    return n_steps_ == other.n_steps_ && std::abs(dt_ - other.dt_) <= 1e-12 * dt_ &&
           std::abs(t_start_ - other.t_start_) <= 1e-12 * std::max(1.0, std::abs(t_end()));
}

Trajectory::Trajectory(TimeGrid time_grid, std::vector<GridFunction> slices)
    : time_grid_(time_grid), slices_(std::move(slices)) {
    if (slices_.size() != time_grid_.n_nodes()) {
        throw Error(ErrorKind::InvalidArgument, "trajectory needs one slice per time node");
    }
    for (const auto& s : slices_) require_same_grid(slices_.front().grid(), s.grid());
}

Trajectory Trajectory::zeros(const Grid& grid, const TimeGrid& time_grid) {
    return Trajectory(time_grid, std::vector<GridFunction>(time_grid.n_nodes(), GridFunction::zeros(grid)));
}

void require_same_layout(const Trajectory& a, const Trajectory& b) {
    require_same_grid(a.grid(), b.grid());
    if (!a.time_grid().matches(b.time_grid())) {
        throw Error(ErrorKind::GridMismatch, "trajectories live on different time grids");
    }
}

Trajectory Trajectory::operator+(const Trajectory& other) const {
    require_same_layout(*this, other);
    std::vector<GridFunction> out;
    out.reserve(size());
    for (std::size_t m = 0; m < size(); ++m) out.push_back(slices_[m] + other.slices_[m]);
    return Trajectory(time_grid_, std::move(out));
}

Trajectory Trajectory::operator-(const Trajectory& other) const {
    require_same_layout(*this, other);
    std::vector<GridFunction> out;
    out.reserve(size());
    for (std::size_t m = 0; m < size(); ++m) out.push_back(slices_[m] - other.slices_[m]);
    return Trajectory(time_grid_, std::move(out));
}

} // namespace nls
