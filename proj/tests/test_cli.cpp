#include "doctest.h"

#include "autstr/cli.hpp"
