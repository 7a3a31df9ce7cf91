#pragma once

#include "tatebv/suites.hpp"

namespace tbv::testing {

using tbv::random_class_elem;
using tbv::random_elem;
using tbv::random_gelem;

} // namespace tbv::testing
