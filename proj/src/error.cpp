#include "fts/error.hpp"

namespace fts {

const char* to_string(Errc code) noexcept {
  switch (code) {
    case Errc::NoItem7Found: return "NoItem7Found";
    case Errc::NoItem8AfterItem7: return "NoItem8AfterItem7";
    case Errc::EmptyVocabulary: return "EmptyVocabulary";
    case Errc::KeywordCollision: return "KeywordCollision";
    case Errc::TopicTooSmall: return "TopicTooSmall";
    case Errc::InvalidParams: return "InvalidParams";
    case Errc::StepOutOfRange: return "StepOutOfRange";
    case Errc::IoError: return "IoError";
    case Errc::BadMagic: return "BadMagic";
    case Errc::TruncatedFile: return "TruncatedFile";
    case Errc::NaNDetected: return "NaNDetected";
    case Errc::ZeroVector: return "ZeroVector";
    case Errc::RankDeficient: return "RankDeficient";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::TooFewPoints: return "TooFewPoints";
    case Errc::NegativeInput: return "NegativeInput";
    case Errc::BadRank: return "BadRank";
    case Errc::EmptyCorpus: return "EmptyCorpus";
    case Errc::TooFewTopics: return "TooFewTopics";
    case Errc::DivideByZeroPrecision: return "DivideByZeroPrecision";
    case Errc::StageDependencyMissing: return "StageDependencyMissing";
    case Errc::ConfigInvalid: return "ConfigInvalid";
  }
  return "Unknown";
}

}  // namespace fts
