#include "doctest.h"

#include "autstr/tree.hpp"
