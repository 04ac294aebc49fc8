// placeholder, replaced as modules land
#include "minkval/scalar.hpp"

