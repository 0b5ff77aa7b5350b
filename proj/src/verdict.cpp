#include "cosetcx/verdict.hpp"

namespace cosetcx {

std::string_view to_string(Status status) {
  switch (status) {
    case Status::Verified:
      return "Verified";
    case Status::Refuted:
      return "Refuted";
    case Status::Unknown:
      return "Unknown";
  }
  return "Unknown";
}

Verdict Verdict::verified(nlohmann::json certificate, std::string reason) {
  return Verdict{Status::Verified, std::move(reason), std::move(certificate)};
}

Verdict Verdict::refuted(nlohmann::json certificate, std::string reason) {
  return Verdict{Status::Refuted, std::move(reason), std::move(certificate)};
}

Verdict Verdict::unknown(std::string reason) {
  return Verdict{Status::Unknown, std::move(reason), nlohmann::json::object()};
}

nlohmann::json Verdict::to_json() const {
  nlohmann::json out;
  out["status"] = std::string(to_string(status));
  if (!reason.empty()) out["reason"] = reason;
  if (!certificate.empty()) out["certificate"] = certificate;
  return out;
}

Status combine(Status a, Status b) {
  if (a == Status::Refuted || b == Status::Refuted) return Status::Refuted;
  if (a == Status::Unknown || b == Status::Unknown) return Status::Unknown;
  return Status::Verified;
}

}  // namespace cosetcx
