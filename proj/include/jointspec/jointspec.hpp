#pragma once

#include "numkit.hpp"
#include "liealg.hpp"
#include "cartan.hpp"
#include "rep.hpp"
#include "koszul.hpp"
#include "spectra.hpp"
#include "verify.hpp"
#include "fuzz.hpp"
#include "io.hpp"
