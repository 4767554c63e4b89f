#pragma once

#include <stdexcept>
#include <string>

namespace exempt {

// Exit-code buckets used by the CLI: usage errors map to 1, data errors
// (bad corpus, bad config, bad dataset) to 2, runtime failures to 3.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class UsageError : public Error {
public:
    using Error::Error;
};

class DataError : public Error {
public:
    using Error::Error;
};

class MalformedCorpus : public DataError {
public:
    using DataError::DataError;
};

class DanglingReference : public DataError {
public:
    using DataError::DataError;
};

class DuplicateCitation : public DataError {
public:
    using DataError::DataError;
};

class NoApplicableState : public DataError {
public:
    using DataError::DataError;
};

class UnknownAsset : public DataError {
public:
    using DataError::DataError;
};

class UnknownCitation : public DataError {
public:
    using DataError::DataError;
};

class MissingTemplate : public DataError {
public:
    using DataError::DataError;
};

class ExhaustedAssetLibrary : public DataError {
public:
    using DataError::DataError;
};

class UnknownInstanceId : public DataError {
public:
    using DataError::DataError;
};

class RuntimeFailure : public Error {
public:
    using Error::Error;
};

class OutputNotWritable : public RuntimeFailure {
public:
    using RuntimeFailure::RuntimeFailure;
};

class InstanceTooLarge : public RuntimeFailure {
public:
    using RuntimeFailure::RuntimeFailure;
};

class EndpointError : public RuntimeFailure {
public:
    using RuntimeFailure::RuntimeFailure;
};

class AuthError : public RuntimeFailure {
public:
    using RuntimeFailure::RuntimeFailure;
};

} // namespace exempt
