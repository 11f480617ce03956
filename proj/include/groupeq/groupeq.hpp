#pragma once

#include "groupeq/bigint.hpp"
#include "groupeq/cli.hpp"
#include "groupeq/eqlang.hpp"
#include "groupeq/errors.hpp"
#include "groupeq/fingroup.hpp"
#include "groupeq/geomdim.hpp"
#include "groupeq/intmat.hpp"
#include "groupeq/poly.hpp"
#include "groupeq/simclass.hpp"
#include "groupeq/solvecount.hpp"
#include "groupeq/verify.hpp"
#include "groupeq/word.hpp"
#include "groupeq/zlinalg.hpp"
