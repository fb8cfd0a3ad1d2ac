#include "clay/backends/factory.hpp"

#include "clay/backends/mock.hpp"
#include "clay/backends/mock_images.hpp"
#include "clay/common/error.hpp"

namespace clay {

BackendSet make_backends(const BackendConfig &chat, const BackendConfig &images,
                         std::shared_ptr<const Taxonomy> taxonomy,
                         std::shared_ptr<BlobStore> store,
                         const HierarchyCardinality &cardinality,
                         WarningSink warn) {
  validate(chat);
  validate(images);
  if (chat.kind == BackendKind::RemoteImage)
    throw configuration_error("chat backend cannot be remote_image");
  if (images.kind == BackendKind::RemoteChat)
    throw configuration_error("image backend cannot be remote_chat");

  std::shared_ptr<ChatModel> model;
  if (chat.kind == BackendKind::Mock)
    model = std::make_shared<MockChatModel>(std::move(taxonomy));
  else
    model = std::make_shared<RemoteChatModel>(chat);

  BackendSet set;
  set.extractor = std::make_shared<ChatKeywordExtractor>(model, warn);
  set.hierarchy =
      std::make_shared<ChatHierarchyGenerator>(model, cardinality, warn);
  set.captioner = std::make_shared<ChatMoodboardCaptioner>(
      model, store, chat.kind != BackendKind::Mock && chat.vision, warn);
  if (images.kind == BackendKind::Mock)
    set.images = std::make_shared<MockImageSynthesizer>(store);
  else
    set.images = std::make_shared<RemoteImageSynthesizer>(images, store);
  return set;
}

BackendSet make_mock_backends(std::shared_ptr<const Taxonomy> taxonomy,
                              std::shared_ptr<BlobStore> store,
                              const HierarchyCardinality &cardinality) {
  return make_backends(BackendConfig{}, BackendConfig{}, std::move(taxonomy),
                       std::move(store), cardinality);
}

} // namespace clay
