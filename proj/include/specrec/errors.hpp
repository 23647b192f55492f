#pragma once

#include <stdexcept>
#include <string>

namespace specrec {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error { public: using Error::Error; };
class ZeroConstantTerm : public Error { public: using Error::Error; };
class EvaluationFailure : public Error { public: using Error::Error; };
class NegativeIndex : public Error { public: using Error::Error; };
class MissingLocalRep : public Error { public: using Error::Error; };
class PoleAtEvaluationPoint : public Error { public: using Error::Error; };
class RamifiedAdjointUnsupported : public Error { public: using Error::Error; };
class TemperednessViolation : public Error { public: using Error::Error; };
class DegenerateAlpha : public Error { public: using Error::Error; };
class TruncationInsufficient : public Error { public: using Error::Error; };
class ContinuationFailure : public Error { public: using Error::Error; };
class CoprimalityViolation : public Error { public: using Error::Error; };
class RegionViolation : public Error { public: using Error::Error; };
class MissingLabel : public Error { public: using Error::Error; };
class DeligneViolation : public Error { public: using Error::Error; };
class PoleAtOne : public Error { public: using Error::Error; };
class PoleAtZeroOrOne : public Error { public: using Error::Error; };
class UnknownSuite : public Error { public: using Error::Error; };
class ParseError : public Error { public: using Error::Error; };
class IoError : public Error { public: using Error::Error; };
class InsufficientCache : public Error { public: using Error::Error; };

}  // namespace specrec
