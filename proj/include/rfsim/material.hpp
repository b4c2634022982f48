#ifndef RFSIM_MATERIAL_HPP
#define RFSIM_MATERIAL_HPP

#include <string>

namespace rfsim {

/// Homogeneous dielectric. Conductivity follows the ITU-R P.2040 power law
/// sigma(f) = c * (f / 1 GHz)^d, so it is frequency dependent.
class Material {
public:
    Material() = default;
    Material(std::string name, double relative_permittivity,
             double conductivity_ref_s_per_m, double conductivity_exponent = 0.0);

    const std::string& name() const { return name_; }
    double relative_permittivity() const { return relative_permittivity_; }
    double conductivity_ref() const { return conductivity_ref_; }
    double conductivity_exponent() const { return conductivity_exponent_; }
    double conductivity_at(double frequency_hz) const;

    /// ITU-R P.2040 concrete: eps_r 5.24, sigma 0.0462 * (f/1GHz)^0.7822 S/m.
    static Material concrete();

private:
    std::string name_ = "vacuum";
    double relative_permittivity_ = 1.0;
    double conductivity_ref_ = 0.0;
    double conductivity_exponent_ = 0.0;
};

}  // namespace rfsim

#endif  // RFSIM_MATERIAL_HPP
