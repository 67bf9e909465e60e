#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fieldtrends {

// Every failure the library can signal. Input errors describe broken files or
// configs; analysis errors describe data that is valid but cannot support the
// requested computation. The CLI maps the former to exit code 2, the latter to 1.
enum class Errc {
    // input / parse
    MalformedHeader,
    MalformedRow,
    NegativeCount,
    DuplicateCell,
    InconsistentDocuments,
    EmptyCorpus,
    InvalidSpec,
    IoFailure,
    // analysis
    EmptyRange,
    InvalidThreshold,
    InsufficientData,
    DegenerateSeries,
    DegenerateFit,
    OutOfDomain,
    NoModelFits,
};

inline std::string_view errc_name(Errc c) {
    switch (c) {
        case Errc::MalformedHeader: return "MalformedHeader";
        case Errc::MalformedRow: return "MalformedRow";
        case Errc::NegativeCount: return "NegativeCount";
        case Errc::DuplicateCell: return "DuplicateCell";
        case Errc::InconsistentDocuments: return "InconsistentDocuments";
        case Errc::EmptyCorpus: return "EmptyCorpus";
        case Errc::InvalidSpec: return "InvalidSpec";
        case Errc::IoFailure: return "IoFailure";
        case Errc::EmptyRange: return "EmptyRange";
        case Errc::InvalidThreshold: return "InvalidThreshold";
        case Errc::InsufficientData: return "InsufficientData";
        case Errc::DegenerateSeries: return "DegenerateSeries";
        case Errc::DegenerateFit: return "DegenerateFit";
        case Errc::OutOfDomain: return "OutOfDomain";
        case Errc::NoModelFits: return "NoModelFits";
    }
    return "UnknownError";
}

inline bool is_input_error(Errc c) {
    switch (c) {
        case Errc::MalformedHeader:
        case Errc::MalformedRow:
        case Errc::NegativeCount:
        case Errc::DuplicateCell:
        case Errc::InconsistentDocuments:
        case Errc::EmptyCorpus:
        case Errc::InvalidSpec:
        case Errc::IoFailure:
            return true;
        default:
            return false;
    }
}

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& detail)
        : std::runtime_error(std::string(errc_name(code)) + ": " + detail), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void raise(Errc code, const std::string& detail) {
    throw Error(code, detail);
}

}  // namespace fieldtrends
