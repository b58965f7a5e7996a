#include "tnsrank/errors.hpp"
