export {
  LABEL_ORDER,
  argmax,
  classifyTokens,
  softmax,
  tokenLogits,
  type BioLabel,
  type HeadParams,
  type TokenClassification,
  type TokenEmbeddings,
} from "./head.js";
export { bioToSpans, simpleTokenize, type Span, type Token } from "./bio.js";
export {
  renderGenerativePredictions,
  renderSpanPredictions,
  spanPredictionsFromLabels,
  writeGenerativePredictions,
  writeSpanPredictions,
  type GenerativePrediction,
  type LabeledDocument,
  type SpanPrediction,
} from "./export.js";
export {
  featureTags,
  loadRegistry,
  sizeBucket,
  type FeatureTags,
  type ModelDescriptor,
} from "./registry.js";
export {
  loadTrainingConfig,
  type Dataset,
  type Hyperparams,
  type TrainingConfig,
} from "./config.js";
