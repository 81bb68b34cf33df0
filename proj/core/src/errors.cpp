#include "crtlab/errors.hpp"

namespace crtlab {

void throw_domain(const std::string& what) { throw DomainError(what); }
void throw_validation(const std::string& what) { throw ValidationError(what); }

}  // namespace crtlab
