/**
 * Reader for the evaluation toolkit's model-descriptor registry, used to
 * stamp run records with the six model features.
 */

import { readFile } from "node:fs/promises";

export type Category = "AutoEncoding" | "AutoRegressive" | "TextToText";

const CATEGORY_CODES: Record<Category, number> = {
  AutoEncoding: 0,
  AutoRegressive: 1,
  TextToText: 2,
};

export interface ModelDescriptor {
  readonly name: string;
  readonly category: Category;
  readonly fromScratch: boolean;
  readonly general: boolean;
  readonly medical: boolean;
  readonly social: boolean;
  readonly sizeMillions: number;
}

export interface FeatureTags {
  readonly category: number;
  readonly general: number;
  readonly medical: number;
  readonly social: number;
  readonly from_scratch: number;
  readonly size_bucket: number;
}

export function sizeBucket(sizeMillions: number): number {
  if (sizeMillions < 100) return 0;
  if (sizeMillions <= 130) return 1;
  return 2;
}

export function featureTags(descriptor: ModelDescriptor): FeatureTags {
  return {
    category: CATEGORY_CODES[descriptor.category],
    general: descriptor.general ? 1 : 0,
    medical: descriptor.medical ? 1 : 0,
    social: descriptor.social ? 1 : 0,
    from_scratch: descriptor.fromScratch ? 1 : 0,
    size_bucket: sizeBucket(descriptor.sizeMillions),
  };
}

export async function loadRegistry(path: string): Promise<Map<string, ModelDescriptor>> {
  const payload = JSON.parse(await readFile(path, "utf-8"));
  if (!Array.isArray(payload?.models)) {
    throw new Error(`${path}: expected {"models": [...]}`);
  }
  const registry = new Map<string, ModelDescriptor>();
  for (const entry of payload.models) {
    const category = entry.category as Category;
    if (!(category in CATEGORY_CODES)) {
      throw new Error(`${path}: unknown category ${entry.category} for ${entry.name}`);
    }
    if (registry.has(entry.name)) {
      throw new Error(`${path}: duplicate model ${entry.name}`);
    }
    registry.set(entry.name, {
      name: entry.name,
      category,
      fromScratch: Boolean(entry.from_scratch),
      general: Boolean(entry.general),
      medical: Boolean(entry.medical),
      social: Boolean(entry.social),
      sizeMillions: Number(entry.size_millions),
    });
  }
  return registry;
}
