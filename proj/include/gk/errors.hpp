#pragma once

#include <stdexcept>
#include <string>

namespace gk {

struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

struct NotSimpleError : std::runtime_error {
    explicit NotSimpleError(const std::string& what) : std::runtime_error(what) {}
};

struct BudgetExceeded : std::runtime_error {
    explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

struct VertexNotInGroup : std::runtime_error {
    explicit VertexNotInGroup(const std::string& what) : std::runtime_error(what) {}
};

struct UnsupportedFamily : std::runtime_error {
    explicit UnsupportedFamily(const std::string& what) : std::runtime_error(what) {}
};

struct CharacteristicNotSupported : std::runtime_error {
    explicit CharacteristicNotSupported(const std::string& what) : std::runtime_error(what) {}
};

struct ForcedSetNotIndependent : std::runtime_error {
    explicit ForcedSetNotIndependent(const std::string& what) : std::runtime_error(what) {}
};

struct UnknownName : std::runtime_error {
    explicit UnknownName(const std::string& what) : std::runtime_error(what) {}
};

struct DataError : std::runtime_error {
    explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace gk
