#pragma once

#include "hqip/spin_system.hpp"
#include "hqip/liouville.hpp"
#include "hqip/pulses.hpp"
#include "hqip/hadamard.hpp"
#include "hqip/specproc.hpp"
#include "hqip/gates.hpp"
#include "hqip/qip2d.hpp"
#include "hqip/io.hpp"
#include "hqip/memsearch.hpp"
