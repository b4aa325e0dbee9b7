#include "params.hpp"

#include <stdexcept>
#include <string>

namespace lodm {

const char* family_name(Family family) {
  switch (family) {
    case Family::GarchGaussian: return "GarchGaussian";
    case Family::LogLinPoisson: return "LogLinPoisson";
    case Family::NbinGarch: return "NbinGarch";
  }
  return "unknown";
}

std::optional<Family> family_from_name(std::string_view name) {
  if (name == "GarchGaussian") return Family::GarchGaussian;
  if (name == "LogLinPoisson") return Family::LogLinPoisson;
  if (name == "NbinGarch") return Family::NbinGarch;
  return std::nullopt;
}

bool sign_constrained(Family family) {
  return family == Family::GarchGaussian || family == Family::NbinGarch;
}

void validate_params(const ModelSpec& spec, const LodmParams& params) {
  if (spec.p < 1 || spec.q < 1)
    throw std::invalid_argument("order must be >= 1");
  if (params.a.size() != static_cast<size_t>(spec.p))
    throw std::invalid_argument("length of a must equal p");
  if (params.b.size() != static_cast<size_t>(spec.q))
    throw std::invalid_argument("length of b must equal q");
  if (sign_constrained(spec.family)) {
    if (!(params.omega > 0.0))
      throw std::invalid_argument(std::string(family_name(spec.family)) +
                                  ": omega must be > 0");
    for (double ak : params.a)
      if (ak < 0.0)
        throw std::invalid_argument(std::string(family_name(spec.family)) +
                                    ": a coefficients must be >= 0");
    for (double bk : params.b)
      if (bk < 0.0)
        throw std::invalid_argument(std::string(family_name(spec.family)) +
                                    ": b coefficients must be >= 0");
  }
  if (spec.family == Family::NbinGarch) {
    if (!params.phi || !(*params.phi > 0.0))
      throw std::invalid_argument("NbinGarch requires shape parameter phi > 0");
  } else if (params.phi) {
    throw std::invalid_argument(std::string(family_name(spec.family)) +
                                " takes no kernel parameter phi");
  }
}

}  // namespace lodm
