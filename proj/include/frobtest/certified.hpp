#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace frobtest {

/// Certificate attached to every computed invariant.
///  - Certified: exact, all stop rules proven for this input.
///  - CertifiedWindow: sound membership data, but completeness rests on a
///    stationary-window heuristic.
///  - Uncertified: computed from inputs that were themselves not certified.
///  - Truncated: a resource cap was hit; `cap` names it.
enum class Status { Certified, CertifiedWindow, Uncertified, Truncated };

const char* to_string(Status s);

/// Larger rank = weaker guarantee.
int weakness(Status s);

inline Status weakest(Status a, Status b) { return weakness(a) >= weakness(b) ? a : b; }

struct CertifiedValue {
  std::int64_t value = 0;
  Status status = Status::Certified;
  std::string cap;                    // which cap was hit when Truncated
  std::vector<std::string> evidence;  // human-readable trail

  bool certified() const { return status == Status::Certified; }
  bool usable() const { return status != Status::Truncated; }
};

}  // namespace frobtest
