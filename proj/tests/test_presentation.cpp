#include "doctest.h"

#include "autstr/presentation.hpp"
