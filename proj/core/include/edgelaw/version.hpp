#pragma once

namespace edgelaw {

const char* version();

}  // namespace edgelaw
