#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

namespace cosetcx {

/// Outcome of a semi-decidable check. Verified and Refuted always carry a
/// certificate; Unknown carries a reason.
enum class Status { Verified, Refuted, Unknown };

std::string_view to_string(Status status);

struct Verdict {
  Status status = Status::Unknown;
  std::string reason;
  nlohmann::json certificate = nlohmann::json::object();

  static Verdict verified(nlohmann::json certificate, std::string reason = {});
  static Verdict refuted(nlohmann::json certificate, std::string reason = {});
  static Verdict unknown(std::string reason);

  bool is_verified() const { return status == Status::Verified; }
  bool is_refuted() const { return status == Status::Refuted; }
  bool is_unknown() const { return status == Status::Unknown; }

  nlohmann::json to_json() const;
};

/// Conjunction with conservative aggregation: any Refuted wins, then any
/// Unknown, otherwise Verified.
Status combine(Status a, Status b);

}  // namespace cosetcx
