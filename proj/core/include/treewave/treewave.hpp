#pragma once

#include "treewave/error.hpp"
#include "treewave/oracle.hpp"
#include "treewave/pinning.hpp"
#include "treewave/profile.hpp"
#include "treewave/reaction.hpp"
#include "treewave/simulator.hpp"
#include "treewave/stability.hpp"
#include "treewave/types.hpp"
#include "treewave/wavespeed.hpp"
