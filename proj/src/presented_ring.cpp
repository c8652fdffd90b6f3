#include "frobtest/presented_ring.hpp"

#include "frobtest/error.hpp"

namespace frobtest {

PresentedRing::PresentedRing(RingPtr ambient, Ideal relations, std::string label)
    : ambient_(std::move(ambient)), relations_(std::move(relations)), label_(std::move(label)) {
  if (ambient_->nvars() > kMaxUserVars)
    throw Error(ErrorCode::InvalidArgument, "rings are limited to 8 variables");
  if (!relations_.ring()->same_as(*ambient_))
    throw Error(ErrorCode::DimensionMismatch, "relation ideal lives in another ring");
}

int PresentedRing::dimension(const Caps& caps) const { return frobtest::dimension(relations_, caps); }

}  // namespace frobtest
