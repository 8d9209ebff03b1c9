#include "kendall3d/errors.hpp"

namespace kendall3d {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "invalid-argument";
    case ErrorKind::DegenerateConfiguration: return "degenerate-configuration";
    case ErrorKind::SingularShape: return "singular-shape";
    case ErrorKind::DegenerateSpectrum: return "degenerate-spectrum";
    case ErrorKind::NoUniqueLogarithm: return "no-unique-logarithm";
    case ErrorKind::IllConditionedBasis: return "ill-conditioned-basis";
    case ErrorKind::DegeneratePlane: return "degenerate-plane";
    case ErrorKind::Parse: return "parse-error";
    case ErrorKind::Io: return "io-error";
    case ErrorKind::Spec: return "spec-error";
  }
  return "unknown";
}

}  // namespace kendall3d

namespace kendall3d {

void rethrow_with_context(const Error& e, std::string_view context) {
  const std::string m = std::string(context) + ": " + e.what();
  switch (e.kind()) {
    case ErrorKind::InvalidArgument: throw InvalidArgument(m);
    case ErrorKind::DegenerateConfiguration: throw DegenerateConfiguration(m);
    case ErrorKind::SingularShape: throw SingularShape(m);
    case ErrorKind::DegenerateSpectrum: throw DegenerateSpectrum(m);
    case ErrorKind::NoUniqueLogarithm: throw NoUniqueLogarithm(m);
    case ErrorKind::IllConditionedBasis: throw IllConditionedBasis(m);
    case ErrorKind::DegeneratePlane: throw DegeneratePlane(m);
    case ErrorKind::Parse: {
      const auto* pe = dynamic_cast<const ParseError*>(&e);
      throw ParseError(m, pe ? pe->line() : 0);
    }
    case ErrorKind::Io: throw IoError(m);
    case ErrorKind::Spec: throw SpecError(m);
  }
  throw Error(e.kind(), m);
}

}  // namespace kendall3d
