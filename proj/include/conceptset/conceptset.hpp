#pragma once

// Umbrella header: the full concept-set algebra and scoring toolkit.

#include "conceptset/concept_set.hpp"
#include "conceptset/conceptnet.hpp"
#include "conceptset/distance_matrix.hpp"
#include "conceptset/episode_io.hpp"
#include "conceptset/errors.hpp"
#include "conceptset/extract.hpp"
#include "conceptset/graph.hpp"
#include "conceptset/json_writer.hpp"
#include "conceptset/rewards.hpp"
#include "conceptset/set_ops.hpp"
#include "conceptset/stemmer.hpp"
#include "conceptset/stopwords.hpp"
#include "conceptset/vocab.hpp"
