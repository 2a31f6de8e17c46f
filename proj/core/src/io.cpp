#include "snaplab/io.hpp"

#include <json.hpp>

#include "snaplab/error.hpp"

namespace snaplab::io {

using nlohmann::json;

namespace {

json amp_json(const std::complex<double>& a) { return json::array({a.real(), a.imag()}); }

std::complex<double> amp_from(const json& j) {
  if (!j.is_array() || j.size() != 2) raise(ErrorCode::ParseError, "amp must be [re, im]");
  return {j.at(0).get<double>(), j.at(1).get<double>()};
}

json parse(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    raise(ErrorCode::ParseError, e.what());
  }
}

json field_json(const spectral::SpectralField& field) {
  const auto f = spectral::canonicalize(field);
  json modes = json::array();
  for (const auto& m : f.modes()) {
    modes.push_back({{"xi", m.freq.xi}, {"amp", amp_json(m.amp)}});
  }
  return {{"dim", f.dim()}, {"modes", modes}};
}

json sphere_json(const sphere::SphereField& field) {
  json coeffs = json::array();
  for (const auto& c : field.coeffs()) {
    coeffs.push_back({{"l", c.l}, {"m", c.m}, {"amp", amp_json(c.amp)}});
  }
  return {{"n", field.params().n}, {"coeffs", coeffs}};
}

}  // namespace

std::string to_json(const spectral::SpectralField& field) { return field_json(field).dump(2); }

spectral::SpectralField field_from_json(std::string_view text) {
  const json j = parse(text);
  try {
    const auto dim = j.at("dim").get<std::size_t>();
    std::vector<spectral::Mode> modes;
    for (const auto& m : j.at("modes")) {
      modes.push_back({{m.at("xi").get<std::vector<double>>()}, amp_from(m.at("amp"))});
    }
    return spectral::canonicalize(spectral::SpectralField(dim, std::move(modes)));
  } catch (const json::exception& e) {
    raise(ErrorCode::ParseError, e.what());
  }
}

std::string to_json(const sphere::SphereField& field) { return sphere_json(field).dump(2); }

sphere::SphereField sphere_field_from_json(std::string_view text) {
  const json j = parse(text);
  try {
    const int n = j.at("n").get<int>();
    std::vector<sphere::SphereCoeff> coeffs;
    for (const auto& c : j.at("coeffs")) {
      coeffs.push_back({c.at("l").get<long>(), c.at("m").get<long>(), amp_from(c.at("amp"))});
    }
    return sphere::SphereField(sphere::SphereParams{n}, std::move(coeffs));
  } catch (const json::exception& e) {
    raise(ErrorCode::ParseError, e.what());
  }
}

std::string to_json(const euclid::SolveReport& report) {
  json kernel = json::array();
  for (const auto& f : report.kernel_modes) kernel.push_back(f.xi);
  json j = {{"status", euclid::to_string(report.status)},
            {"residual", report.residual},
            {"conditioning", report.conditioning},
            {"kernel_modes", kernel},
            {"note", report.note}};
  j["solution"] = report.solution ? field_json(*report.solution) : json(nullptr);
  return j.dump(2);
}

std::string to_json(const sphere::SphereSolveReport& report) {
  json free = json::array();
  for (const auto& [l, m] : report.free_coeffs) free.push_back({l, m});
  json j = {{"status", euclid::to_string(report.status)},
            {"residual", report.residual},
            {"conditioning", report.conditioning},
            {"free_coeffs", free},
            {"kernel_degrees", report.kernel_degrees},
            {"note", report.note}};
  j["solution"] = report.solution ? sphere_json(*report.solution) : json(nullptr);
  return j.dump(2);
}

}  // namespace snaplab::io
