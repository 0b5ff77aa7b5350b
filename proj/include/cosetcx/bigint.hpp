#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace cosetcx {

using BigInt = boost::multiprecision::cpp_int;

}  // namespace cosetcx
