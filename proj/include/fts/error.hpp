#pragma once

#include <stdexcept>
#include <string>

namespace fts {

enum class Errc {
  NoItem7Found,
  NoItem8AfterItem7,
  EmptyVocabulary,
  KeywordCollision,
  TopicTooSmall,
  InvalidParams,
  StepOutOfRange,
  IoError,
  BadMagic,
  TruncatedFile,
  NaNDetected,
  ZeroVector,
  RankDeficient,
  DimensionMismatch,
  TooFewPoints,
  NegativeInput,
  BadRank,
  EmptyCorpus,
  TooFewTopics,
  DivideByZeroPrecision,
  StageDependencyMissing,
  ConfigInvalid,
};

const char* to_string(Errc code) noexcept;

// Every failure surfaced by the library carries one of the codes above so
// callers (and the CLI exit path) can branch without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace fts
