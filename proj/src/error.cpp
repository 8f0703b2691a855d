#include "i3/error.hpp"

namespace i3 {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::io: return "io error";
    case ErrorCode::schema: return "schema error";
    case ErrorCode::validation: return "validation error";
    case ErrorCode::duplicate_key: return "duplicate key";
    case ErrorCode::configuration: return "configuration error";
    case ErrorCode::domain: return "domain error";
    case ErrorCode::undefined_indicator: return "undefined indicator";
    case ErrorCode::usage: return "usage error";
    case ErrorCode::not_found: return "not found";
  }
  return "error";
}

}  // namespace i3
