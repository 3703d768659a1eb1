#pragma once

namespace lg {

// serial is the reference; parallel uses OpenMP and must agree bitwise.
enum class Exec { serial, parallel };

}  // namespace lg
