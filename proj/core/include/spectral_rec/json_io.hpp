#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "spectral_rec/wkb.hpp"

namespace spectral_rec {

/// Header fields shared by every output document.
struct DocumentInfo {
  std::string curve;
  std::string config_hash;
};

// Canonical UTF-8 JSON: fixed key order, terms sorted by slot tuple,
// rationals as "p/q" strings, two-space indentation, trailing newline.

std::string correlator_json(const SpectralCurve& curve, const Correlator& w);
std::string correlators_document(const DocumentInfo& info, const CorrelatorTable& table);
std::string free_energies_document(const DocumentInfo& info, const FreeEnergyTable& table);
std::string wkb_document(const DocumentInfo& info, const WKBExpansion& expansion);
std::string report_document(const DocumentInfo& info, std::string_view suite, const VerificationReport& report);

/// The config hash recorded in a document, or empty when unreadable.
std::string document_hash(std::string_view text);

/// Rebuilds a correlator table over `curve`. Throws Error(kMalformedInput)
/// on structural problems and on points that are not active.
CorrelatorTable read_correlators(std::string_view text, std::shared_ptr<const SpectralCurve> curve);

}  // namespace spectral_rec
