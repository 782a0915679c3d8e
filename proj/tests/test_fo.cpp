#include "doctest.h"

#include "autstr/fo.hpp"
