#include "rfsim/material.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace rfsim {

Material::Material(std::string name, double relative_permittivity,
                   double conductivity_ref_s_per_m, double conductivity_exponent)
    : name_(std::move(name)),
      relative_permittivity_(relative_permittivity),
      conductivity_ref_(conductivity_ref_s_per_m),
      conductivity_exponent_(conductivity_exponent) {
    if (relative_permittivity_ < 1.0) {
        throw std::invalid_argument("material '" + name_ + "': relative permittivity must be >= 1");
    }
    if (conductivity_ref_ < 0.0) {
        throw std::invalid_argument("material '" + name_ + "': conductivity must be >= 0");
    }
}

double Material::conductivity_at(double frequency_hz) const {
    if (conductivity_exponent_ == 0.0) {
        return conductivity_ref_;
    }
    return conductivity_ref_ * std::pow(frequency_hz / 1e9, conductivity_exponent_);
}

Material Material::concrete() {
    return {"concrete", 5.24, 0.0462, 0.7822};
}

}  // namespace rfsim
