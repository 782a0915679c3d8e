#include "doctest.h"

#include "autstr/structures.hpp"
