#pragma once

// Text and file formats: element expressions, presentation files (JSON),
// and solution files for embeddings.

#include <map>
#include <string>
#include <vector>

#include "chiral/ihr.hpp"
#include "chiral/poisson.hpp"
#include "chiral/presentation.hpp"

namespace chiral {

class Engine;

/// Element expression: sums of scalar multiples of generators, D(x), D^n(x),
/// exp(m), and normal products :x y z: (right-nested). Without an engine,
/// normal products and derivatives must already be canonical monomials.
/// Throws ParseError with the column inside the expression.
Element parse_element(const Presentation& p, const std::string& text, Engine* eng = nullptr);

/// Presentation files: {name, family, generators, brackets, relations}.
std::string presentation_to_json(const Presentation& p);
Presentation presentation_from_json(const std::string& text);

/// Poisson presentation files use the same schema with "poisson": true and
/// brackets as jet polynomials (element expressions without h).
std::string poisson_to_json(const PoissonPresentation& p);
PoissonPresentation poisson_from_json(const std::string& text);

/// True when the file text carries "poisson": true.
bool is_poisson_file(const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

/// Generator images in the element grammar, one entry per source generator.
std::string solution_to_json(const EmbeddingSolution& s);
std::vector<Element> solution_images_from_json(const EmbeddingProblem& p, const std::string& text);

}  // namespace chiral
