#pragma once

#include <string>
#include <string_view>

#include "snaplab/euclid.hpp"
#include "snaplab/spectral.hpp"
#include "snaplab/sphere.hpp"

// Text (JSON) forms of fields and reports. Readers canonicalize; writers emit
// canonical order so equal values serialize to identical bytes.
namespace snaplab::io {

// {"dim": n, "modes": [{"xi": [..], "amp": [re, im]}, ...]}
std::string to_json(const spectral::SpectralField& field);
spectral::SpectralField field_from_json(std::string_view text);

// {"n": n, "coeffs": [{"l": l, "m": m, "amp": [re, im]}, ...]}
std::string to_json(const sphere::SphereField& field);
sphere::SphereField sphere_field_from_json(std::string_view text);

std::string to_json(const euclid::SolveReport& report);
std::string to_json(const sphere::SphereSolveReport& report);

}  // namespace snaplab::io
