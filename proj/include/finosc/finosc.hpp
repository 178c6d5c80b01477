#pragma once

#include "finosc/lattice.hpp"
#include "finosc/fourier.hpp"
#include "finosc/thetagauss.hpp"
#include "finosc/phasespace.hpp"
#include "finosc/hermite.hpp"
#include "finosc/spectral.hpp"
#include "finosc/quantize.hpp"
#include "finosc/reference.hpp"
#include "finosc/frft.hpp"
