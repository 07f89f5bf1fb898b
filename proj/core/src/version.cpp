#include "edgelaw/version.hpp"

namespace edgelaw {

const char* version() { return EDGELAW_VERSION; }

}  // namespace edgelaw
