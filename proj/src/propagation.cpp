#include "aecoupler/propagation.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace aecoupler {

ZGrid::ZGrid(double z_start_, double z_end_, std::size_t step_count_, std::size_t stride_)
    : z_start(z_start_), z_end(z_end_), step_count(step_count_), stride(stride_) {
    if (!(z_end > z_start)) {
        throw std::invalid_argument("grid requires z_end > z_start");
    }
    if (step_count < 1) {
        throw std::invalid_argument("grid requires at least one step");
    }
    if (stride < 1 || step_count % stride != 0) {
        std::ostringstream msg;
        msg << "sample stride " << stride << " must divide step count " << step_count;
        throw std::invalid_argument(msg.str());
    }
}

ZGrid ZGrid::with_max_step(double z_start, double z_end, double h_max, bool full_record) {
    if (!(h_max > 0.0)) {
        throw std::invalid_argument("step must be positive");
    }
    const double span = z_end - z_start;
    auto count = static_cast<std::size_t>(std::ceil(span / h_max - 1e-12));
    if (count < 1) count = 1;
    return {z_start, z_end, count, full_record ? 1 : count};
}

ZGrid default_grid(const AllenEberlyScheme& scheme, std::size_t stride) {
    return {-scheme.half_length, scheme.half_length, kDefaultStepCount, stride};
}

PowerPrediction adiabatic_following_prediction(const AllenEberlyScheme& scheme, double z) {
    const double half_theta = 0.5 * mixing_angle(scheme, z);
    const double s = std::sin(half_theta);
    const double c = std::cos(half_theta);
    return {s * s, c * c};
}

} // namespace aecoupler
