#ifndef LP2_LP2_HPP_
#define LP2_LP2_HPP_

#include "lp2/core.hpp"
#include "lp2/critical.hpp"
#include "lp2/index.hpp"
#include "lp2/norms.hpp"
#include "lp2/parallel.hpp"
#include "lp2/radius.hpp"
#include "lp2/simplex.hpp"

#endif  // LP2_LP2_HPP_
