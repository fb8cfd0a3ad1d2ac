#pragma once

#include <memory>

#include "clay/backends/adapters.hpp"
#include "clay/backends/remote.hpp"
#include "clay/backends/taxonomy.hpp"
#include "clay/core/blob_store.hpp"
#include "clay/core/config.hpp"
#include "clay/core/ports.hpp"

namespace clay {

// Mock configs never construct a remote adapter, so no socket is opened.
// Remote configs read their credentials here and fail fast when unset.
BackendSet make_backends(const BackendConfig &chat, const BackendConfig &images,
                         std::shared_ptr<const Taxonomy> taxonomy,
                         std::shared_ptr<BlobStore> store,
                         const HierarchyCardinality &cardinality,
                         WarningSink warn = {});

BackendSet make_mock_backends(std::shared_ptr<const Taxonomy> taxonomy,
                              std::shared_ptr<BlobStore> store,
                              const HierarchyCardinality &cardinality = {});

} // namespace clay
