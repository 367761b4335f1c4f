#pragma once

#include "jumploci/loci/fit.hpp"
#include "jumploci/loci/locus.hpp"
#include "jumploci/loci/predicates.hpp"
#include "jumploci/loci/seeding.hpp"
