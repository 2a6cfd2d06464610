// Error types thrown by the library. Recoverable per-record problems
// (import issues, rejected candidates) are returned as values instead.
#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace entity_guard {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct PatternError : Error {
    using Error::Error;
};

struct InsufficientInput : Error {
    using Error::Error;
};

struct BucketExhausted : Error {
    BucketExhausted(int bucket, const std::string& what) : Error(what), bucket_index(bucket) {}
    int bucket_index;
};

struct EmptyCorpus : Error {
    using Error::Error;
};

struct SeparatorCollision : Error {
    using Error::Error;
};

struct CountMismatch : Error {
    CountMismatch(std::size_t expected, std::size_t actual, const std::string& what)
        : Error(what), expected(expected), actual(actual) {}
    std::size_t expected;
    std::size_t actual;
};

struct BackendError : Error {
    using Error::Error;
};

struct SchemaError : Error {
    using Error::Error;
};

struct UnknownSampleId : Error {
    UnknownSampleId(std::vector<std::string> ids, const std::string& what)
        : Error(what), sample_ids(std::move(ids)) {}
    std::vector<std::string> sample_ids;
};

struct DegenerateInput : Error {
    using Error::Error;
};

struct InsufficientData : Error {
    using Error::Error;
};

struct UnsupportedFormat : Error {
    using Error::Error;
};

struct ConfigError : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

}  // namespace entity_guard
