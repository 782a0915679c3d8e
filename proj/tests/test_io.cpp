#include "doctest.h"

#include "autstr/io.hpp"
